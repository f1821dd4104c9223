#include <cmath>
#include <vector>

#include "common/error.hpp"
#include "dem/contact_table.hpp"
#include "dem/simulation.hpp"
#include "doctest.h"

using namespace recoat;

namespace {

MaterialTable dry_material() {
  MaterialTable m;
  m.gamma = m.gamma_B = m.gamma_W = 0.0;
  return m;
}

SimParams wide_params(double L_y = 0.5e-3) {
  SimParams sp;
  sp.L_y = L_y;
  sp.domain_lo_x = -5e-3;
  sp.domain_hi_x = 5e-3;
  sp.domain_lo_z = -5e-3;
  sp.domain_hi_z = 5e-3;
  return sp;
}

ProcessGeometry substrate_only() {
  ProcessGeometry g;
  Wall w;
  w.lo = {-1e6, -1e6, -1e6};
  w.hi = {1e6, 1e6, 0.0};
  w.cls = InteractionClass::substrate;
  w.id = 0;
  g.walls.push_back(w);
  return g;
}

}  // namespace

TEST_CASE("head-on impact rebounds at the restitution coefficient") {
  std::vector<Particle> ps;
  ps.push_back(make_particle(0, {-18e-6, 0.25e-3, 1e-4}, 17e-6, 4430.0));
  ps.push_back(make_particle(1, {18e-6, 0.25e-3, 1e-4}, 17e-6, 4430.0));
  ps[0].v = {0.05, 0.0, 0.0};
  ps[1].v = {-0.05, 0.0, 0.0};

  SimParams sp = wide_params();
  sp.gravity_on = false;
  Simulation sim(dry_material(), ProcessGeometry{}, sp, ps);

  for (int s = 0; s < 40000; ++s) {
    sim.step();
    const auto& p = sim.particles();
    const double gap = (p[1].r_G.x - p[0].r_G.x) - 34e-6;
    if (gap > 2e-6 && p[1].v.x > p[0].v.x) break;
  }
  const auto& p = sim.particles();
  const double rebound = (p[1].v.x - p[0].v.x) / 0.1;
  CHECK(rebound > 0.38);
  CHECK(rebound < 0.42);

  // momentum exchange is antisymmetric to round-off
  const double px = p[0].m * p[0].v.x + p[1].m * p[1].v.x;
  CHECK(std::abs(px) < 1e-20);
}

TEST_CASE("free fall matches the closed form") {
  std::vector<Particle> ps;
  ps.push_back(make_particle(0, {0.0, 0.25e-3, 1e-3}, 17e-6, 4430.0));
  Simulation sim(dry_material(), ProcessGeometry{}, wide_params(), ps);
  const int n = 1000;
  for (int s = 0; s < n; ++s) sim.step();
  const double t = sim.time();
  CHECK(t == doctest::Approx(n * sim.dt()).epsilon(1e-12));
  const Particle& p = sim.particles()[0];
  CHECK(p.v.z == doctest::Approx(-9.81 * t).epsilon(1e-12));
  CHECK(p.r_G.z == doctest::Approx(1e-3 - 0.5 * 9.81 * t * t).epsilon(1e-9));
  CHECK(p.v.x == 0.0);
  CHECK(p.omega.y == 0.0);
}

TEST_CASE("particle comes to rest at the static penetration") {
  std::vector<Particle> ps;
  ps.push_back(make_particle(0, {0.0, 0.25e-3, 17e-6 + 0.5e-6}, 17e-6, 4430.0));
  Simulation sim(dry_material(), substrate_only(), wide_params(), ps);
  for (int s = 0; s < 60000; ++s) sim.step();

  const Particle& p = sim.particles()[0];
  const double delta = p.m * 9.81 / 0.05;  // static force balance
  CHECK(-(p.r_G.z - p.r) == doctest::Approx(delta).epsilon(0.05));
  CHECK(norm(p.v) < 1e-6);
  CHECK(norm(p.f) < 1e-3 * p.m * 9.81);
  CHECK(sim.last_stats().max_rel_penetration ==
        doctest::Approx(delta / p.r).epsilon(0.05));
}

TEST_CASE("timestep guard refuses an unstable dt") {
  std::vector<Particle> ps;
  ps.push_back(make_particle(0, {0.0, 0.25e-3, 1e-4}, 10e-6, 4430.0));
  MaterialTable mat = dry_material();
  const double dt_crit = critical_timestep(mat, ps[0].m);

  SimParams sp = wide_params();
  sp.dt = 1.1 * dt_crit;
  CHECK_THROWS_AS(Simulation(mat, ProcessGeometry{}, sp, ps), Error);

  sp.allow_unstable_dt = true;
  Simulation sim(mat, ProcessGeometry{}, sp, ps);
  CHECK(sim.dt() == 1.1 * dt_crit);

  SimParams auto_sp = wide_params();
  Simulation sim2(mat, ProcessGeometry{}, auto_sp, ps);
  CHECK(sim2.dt() == doctest::Approx(0.9 * dt_crit).epsilon(1e-12));
}

TEST_CASE("advance covers the requested duration in whole steps") {
  std::vector<Particle> ps;
  ps.push_back(make_particle(0, {0.0, 0.25e-3, 1e-4}, 17e-6, 4430.0));
  SimParams sp = wide_params();
  sp.gravity_on = false;
  Simulation sim(dry_material(), ProcessGeometry{}, sp, ps);
  sim.advance(10.5 * sim.dt());
  CHECK(sim.step_count() == 11);
  sim.advance(10.0 * sim.dt());
  CHECK(sim.step_count() == 21);
}

TEST_CASE("overflow kill plane deactivates dropped particles") {
  std::vector<Particle> ps;
  ps.push_back(make_particle(0, {1.5e-3, 0.25e-3, -0.5e-4}, 17e-6, 4430.0));
  ps.push_back(make_particle(1, {0.5e-3, 0.25e-3, 1e-3}, 17e-6, 4430.0));
  SimParams sp = wide_params();
  sp.kill_x_min = 1e-3;
  sp.kill_z = -1e-4;
  Simulation sim(dry_material(), ProcessGeometry{}, sp, ps);
  for (int s = 0; s < 2000 && sim.particles()[0].active; ++s) sim.step();
  CHECK_FALSE(sim.particles()[0].active);
  CHECK(norm(sim.particles()[0].v) == 0.0);
  CHECK(sim.particles()[1].active);
  CHECK(sim.last_stats().active_count == 1);
}

TEST_CASE("far kill plane removes ejecta gliding past the overflow") {
  std::vector<Particle> ps;
  ps.push_back(make_particle(0, {1.5e-3, 0.25e-3, 1e-3}, 17e-6, 4430.0));
  ps[0].v = {0.2, 0.0, 0.0};  // above kill_z, so only the far plane acts
  SimParams sp = wide_params();
  sp.kill_x_min = 1e-3;
  sp.kill_z = -1e-4;
  sp.kill_x_max = 2e-3;
  Simulation sim(dry_material(), ProcessGeometry{}, sp, ps);
  for (int s = 0; s < 2000 && sim.particles()[0].active; ++s) sim.step();
  CHECK_FALSE(sim.particles()[0].active);
  CHECK(sim.particles()[0].r_G.x > 2e-3);
  CHECK(sim.particles()[0].r_G.x < 2e-3 + 0.2 * 2.0 * sim.dt());
}

namespace {

std::vector<Particle> adhesive_cluster() {
  std::vector<Particle> ps;
  int id = 0;
  for (int k = 0; k < 2; ++k) {
    for (int j = 0; j < 2; ++j) {
      for (int i = 0; i < 2; ++i) {
        const Vec3 pos{i * 35e-6 + 20e-6, j * 35e-6 + 80e-6, k * 35e-6 + 18e-6};
        ps.push_back(make_particle(id, pos, 16e-6 + 1e-6 * id, 4430.0));
        ++id;
      }
    }
  }
  return ps;
}

void run_cluster(int threads, int steps, std::vector<Particle>& out) {
  MaterialTable mat;  // adhesive defaults
  SimParams sp = wide_params(0.2e-3);
  sp.force_threads = threads;
  Simulation sim(mat, substrate_only(), sp, adhesive_cluster());
  for (int s = 0; s < steps; ++s) sim.step();
  out = sim.particles();
}

bool states_identical(const std::vector<Particle>& a,
                      const std::vector<Particle>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].r_G.x != b[i].r_G.x || a[i].r_G.y != b[i].r_G.y ||
        a[i].r_G.z != b[i].r_G.z)
      return false;
    if (a[i].v.x != b[i].v.x || a[i].v.y != b[i].v.y || a[i].v.z != b[i].v.z)
      return false;
    if (a[i].omega.x != b[i].omega.x || a[i].omega.y != b[i].omega.y ||
        a[i].omega.z != b[i].omega.z)
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("sequential runs are bit-identical") {
  std::vector<Particle> a, b;
  run_cluster(1, 3000, a);
  run_cluster(1, 3000, b);
  CHECK(states_identical(a, b));
  // and the dynamics did something
  bool moved = false;
  for (const Particle& p : a) moved = moved || norm2(p.omega) > 0.0;
  CHECK(moved);
}

TEST_CASE("threaded force pass is repeatable for a fixed thread count") {
  std::vector<Particle> a, b;
  run_cluster(2, 3000, a);
  run_cluster(2, 3000, b);
  CHECK(states_identical(a, b));
}

TEST_CASE("pair forces cancel in the total") {
  MaterialTable mat;  // adhesive
  SimParams sp = wide_params(0.2e-3);
  sp.gravity_on = false;
  Simulation sim(mat, ProcessGeometry{}, sp, adhesive_cluster());
  sim.step();
  Vec3 sum{};
  double scale = 0.0;
  for (const Particle& p : sim.particles()) {
    sum += p.f;
    scale += norm(p.f);
  }
  CHECK(norm(sum) <= 1e-12 * (scale + 1e-30));
}

TEST_CASE("contact table: keys, staleness, compaction") {
  CHECK(ContactTable::pair_key(3, 7) == ContactTable::pair_key(7, 3));
  CHECK(ContactTable::pair_key(3, 7) != ContactTable::pair_key(3, 8));
  CHECK(ContactTable::wall_key(0, 3) != ContactTable::pair_key(0, 3));
  CHECK_THROWS_AS(ContactTable::pair_key(4, 4), Error);

  ContactTable ct(4);
  const uint64_t k = ContactTable::pair_key(1, 2);
  ct.spring(k, 5) = {1e-8, 0.0, 0.0};
  CHECK(ct.live(k, 5));
  CHECK(ct.live(k, 6));       // one-step grace
  CHECK_FALSE(ct.live(k, 7));  // expired

  // re-acquiring an expired slot restarts the spring
  CHECK(ct.spring(k, 7).x == 0.0);
  ct.spring(k, 7) = {2e-8, 0.0, 0.0};
  CHECK(ct.spring(k, 8).x == 2e-8);  // consecutive steps keep state

  ct.touch(k, 9);  // keep-alive inside the cutoff
  CHECK(ct.spring(k, 10).x == 2e-8);

  // table growth under many inserts preserves entries
  ContactTable big(4);
  for (int i = 0; i < 500; ++i)
    big.spring(ContactTable::pair_key(i, i + 1), 1) = {static_cast<double>(i), 0.0, 0.0};
  for (int i = 0; i < 500; ++i)
    CHECK(big.spring(ContactTable::pair_key(i, i + 1), 2).x == i);
  CHECK(big.live_count(2) == 500);

  big.compact(400);  // far in the future, everything is stale
  CHECK(big.live_count(400) == 0);
}
