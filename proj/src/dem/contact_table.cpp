#include "dem/contact_table.hpp"

#include <algorithm>
#include <bit>

#include "common/error.hpp"

namespace recoat {

namespace {

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

bool fresh(uint32_t last, uint32_t step) {
  return last == step || last + 1 == step;
}

}  // namespace

ContactTable::ContactTable(size_t expected) {
  size_t n = std::bit_ceil(std::max<size_t>(16, expected * 2));
  entries_.assign(n, Entry{});
}

uint64_t ContactTable::pair_key(int64_t id_a, int64_t id_b) {
  if (id_a == id_b || id_a < 0 || id_b < 0)
    fail(ErrorCode::invalid_parameter, "contact key: bad particle pair");
  const uint64_t lo = static_cast<uint64_t>(std::min(id_a, id_b));
  const uint64_t hi = static_cast<uint64_t>(std::max(id_a, id_b));
  // ids stay far below 2^31; +1 keeps any valid key nonzero
  return (hi << 32) | (lo + 1);
}

uint64_t ContactTable::wall_key(int wall_id, int64_t particle_id) {
  if (wall_id < 0 || particle_id < 0)
    fail(ErrorCode::invalid_parameter, "contact key: bad wall contact");
  return (1ull << 63) | (static_cast<uint64_t>(wall_id) << 32) |
         (static_cast<uint64_t>(particle_id) + 1);
}

size_t ContactTable::probe(uint64_t key) const {
  const size_t mask = entries_.size() - 1;
  size_t i = splitmix64(key) & mask;
  while (entries_[i].key != 0 && entries_[i].key != key) i = (i + 1) & mask;
  return i;
}

Vec3& ContactTable::spring(uint64_t key, uint32_t step) {
  size_t i = probe(key);
  if (entries_[i].key == 0) {
    // grow only on insert so concurrent lookups never see a rehash
    if (used_ * 5 >= entries_.size() * 3) {
      grow();
      i = probe(key);
    }
    Entry& e = entries_[i];
    e.key = key;
    ++used_;
    e.xi = {0.0, 0.0, 0.0};
    e.last_step = step;
    return e.xi;
  }
  Entry& e = entries_[i];
  if (!fresh(e.last_step, step))
    e.xi = {0.0, 0.0, 0.0};  // same slot, but the old contact had ended
  e.last_step = step;
  return e.xi;
}

void ContactTable::touch(uint64_t key, uint32_t step) {
  const size_t i = probe(key);
  Entry& e = entries_[i];
  if (e.key == key && fresh(e.last_step, step)) e.last_step = step;
}

bool ContactTable::live(uint64_t key, uint32_t step) const {
  const size_t i = probe(key);
  return entries_[i].key == key && fresh(entries_[i].last_step, step);
}

void ContactTable::grow() {
  std::vector<Entry> old;
  old.swap(entries_);
  entries_.assign(old.size() * 2, Entry{});
  used_ = 0;
  for (const Entry& e : old) {
    if (e.key == 0) continue;
    const size_t i = probe(e.key);
    entries_[i] = e;
    ++used_;
  }
}

void ContactTable::compact(uint32_t step) {
  std::vector<Entry> old;
  old.swap(entries_);
  size_t live_n = 0;
  for (const Entry& e : old)
    if (e.key != 0 && fresh(e.last_step, step)) ++live_n;
  entries_.assign(std::bit_ceil(std::max<size_t>(16, live_n * 2)), Entry{});
  used_ = 0;
  for (const Entry& e : old) {
    if (e.key == 0 || !fresh(e.last_step, step)) continue;
    const size_t i = probe(e.key);
    entries_[i] = e;
    ++used_;
  }
}

size_t ContactTable::live_count(uint32_t step) const {
  size_t n = 0;
  for (const Entry& e : entries_)
    if (e.key != 0 && fresh(e.last_step, step)) ++n;
  return n;
}

}  // namespace recoat
