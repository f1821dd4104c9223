#pragma once

#include <cstdint>
#include <vector>

#include "dem/vec3.hpp"

namespace recoat {

// Per-contact tangential spring storage keyed by particle pair or by
// wall/particle. An entry is live while it was touched this step or the
// previous one; older entries read as absent and their spring state is
// discarded, which realizes removal on separation beyond the adhesion cutoff
// without an explicit erase pass.
class ContactTable {
 public:
  explicit ContactTable(size_t expected = 1024);

  static uint64_t pair_key(int64_t id_a, int64_t id_b);
  static uint64_t wall_key(int wall_id, int64_t particle_id);

  // Lookup-or-create for an overlapping contact; stale entries restart with a
  // zero spring. Reference stays valid until the next insert.
  Vec3& spring(uint64_t key, uint32_t step);

  // Keep-alive for a contact inside the cutoff but not overlapping; no entry
  // is created.
  void touch(uint64_t key, uint32_t step);

  // True when the key was touched at `step` or `step - 1`.
  bool live(uint64_t key, uint32_t step) const;

  // Drops stale slots; call occasionally so the table does not accumulate
  // dead contacts.
  void compact(uint32_t step);

  size_t live_count(uint32_t step) const;
  size_t slot_count() const { return entries_.size(); }

 private:
  struct Entry {
    uint64_t key = 0;  // 0 = empty slot
    Vec3 xi{0.0, 0.0, 0.0};
    uint32_t last_step = 0;
  };

  size_t probe(uint64_t key) const;
  void grow();

  std::vector<Entry> entries_;
  size_t used_ = 0;  // occupied slots including stale ones
};

}  // namespace recoat
