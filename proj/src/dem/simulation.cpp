#include "dem/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "common/error.hpp"

namespace recoat {

namespace {
constexpr double kDistFloor = 1e-15;  // coincident centers guard
}

Simulation::Simulation(MaterialTable mat, ProcessGeometry geom,
                       SimParams params, std::vector<Particle> particles)
    : mat_(mat),
      geom_(std::move(geom)),
      params_(params),
      particles_(std::move(particles)) {
  mat_.validate();
  mat_.finalize();
  if (particles_.empty())
    fail(ErrorCode::invalid_parameter, "simulation: no particles");
  if (params_.L_y <= 0.0)
    fail(ErrorCode::invalid_parameter, "simulation: periodic width must be positive");
  if (params_.force_threads < 1) params_.force_threads = 1;

  g_cut_[0] = mat_.gamma > 0.0 ? 10.0 * adhesion_g0(mat_.A, mat_.gamma) : 0.0;
  g_cut_[1] = mat_.gamma_B > 0.0 ? 10.0 * adhesion_g0(mat_.A, mat_.gamma_B) : 0.0;
  g_cut_[2] = mat_.gamma_W > 0.0 ? 10.0 * adhesion_g0(mat_.A, mat_.gamma_W) : 0.0;

  double r_max = 0.0;
  m_min_ = 1e300;
  for (const Particle& p : particles_) {
    r_max = std::max(r_max, p.r);
    m_min_ = std::min(m_min_, p.m);
  }
  const double dt_crit = critical_timestep(mat_, m_min_);
  if (params_.dt <= 0.0) params_.dt = 0.9 * dt_crit;
  if (params_.dt > dt_crit && !params_.allow_unstable_dt)
    fail(ErrorCode::invalid_parameter,
         "simulation: dt " + std::to_string(params_.dt) +
             " exceeds stable limit " + std::to_string(dt_crit));

  const double g_cut_max = std::max({g_cut_[0], g_cut_[1], g_cut_[2]});
  reach_max_ = 2.0 * r_max + g_cut_max;
  grid_.configure(reach_max_ + params_.skin, params_.domain_lo_x,
                  params_.domain_hi_x, params_.domain_lo_z, params_.domain_hi_z,
                  params_.L_y);
  rebuild_neighbors();
  compute_forces();
  forces_valid_ = true;
}

void Simulation::invalidate() {
  double r_max = 0.0;
  m_min_ = 1e300;
  for (const Particle& p : particles_) {
    r_max = std::max(r_max, p.r);
    m_min_ = std::min(m_min_, p.m);
  }
  const double dt_crit = critical_timestep(mat_, m_min_);
  if (params_.dt > dt_crit && !params_.allow_unstable_dt)
    fail(ErrorCode::invalid_parameter,
         "simulation: dt exceeds stable limit after particle change");
  const double g_cut_max = std::max({g_cut_[0], g_cut_[1], g_cut_[2]});
  reach_max_ = 2.0 * r_max + g_cut_max;
  grid_.configure(reach_max_ + params_.skin, params_.domain_lo_x,
                  params_.domain_hi_x, params_.domain_lo_z, params_.domain_hi_z,
                  params_.L_y);
  rebuild_neighbors();
  forces_valid_ = false;
}

bool Simulation::neighbors_stale() const {
  if (ref_pos_.size() != particles_.size()) return true;
  const double lim2 = 0.25 * params_.skin * params_.skin;
  for (size_t i = 0; i < particles_.size(); ++i) {
    const Particle& p = particles_[i];
    if (!p.active) continue;
    const double dx = p.r_G.x - ref_pos_[i].x;
    const double dy = min_image_dy(p.r_G.y - ref_pos_[i].y, params_.L_y);
    const double dz = p.r_G.z - ref_pos_[i].z;
    if (dx * dx + dy * dy + dz * dz > lim2) return true;
  }
  return false;
}

void Simulation::rebuild_neighbors() {
  grid_.build(particles_);
  nlist_.clear();
  const double skin = params_.skin;
  const double gc = g_cut_[static_cast<int>(InteractionClass::particle)];
  grid_.for_each_candidate_pair([&](int i, int j) {
    const Particle& a = particles_[static_cast<size_t>(i)];
    const Particle& b = particles_[static_cast<size_t>(j)];
    const double dx = a.r_G.x - b.r_G.x;
    const double dy = min_image_dy(a.r_G.y - b.r_G.y, params_.L_y);
    const double dz = a.r_G.z - b.r_G.z;
    const double reach = a.r + b.r + gc + skin;
    if (dx * dx + dy * dy + dz * dz < reach * reach) nlist_.emplace_back(i, j);
  });
  ref_pos_.resize(particles_.size());
  for (size_t i = 0; i < particles_.size(); ++i) ref_pos_[i] = particles_[i].r_G;
}

void Simulation::eval_pairs(std::span<const std::pair<int, int>> pairs,
                            std::vector<Vec3>& force,
                            std::vector<Vec3>& torque, StepStats& st) {
  const double gc = g_cut_[static_cast<int>(InteractionClass::particle)];
  const double mu = mat_.mu;
  const double dt = params_.dt;
  for (const auto& [i, j] : pairs) {
    const Particle& a = particles_[static_cast<size_t>(i)];
    const Particle& b = particles_[static_cast<size_t>(j)];
    if (!a.active || !b.active) continue;
    ++st.pair_checks;
    Vec3 d = a.r_G - b.r_G;
    d.y = min_image_dy(d.y, params_.L_y);
    const double dist2 = norm2(d);
    const double reach = a.r + b.r + gc;
    if (dist2 >= reach * reach) continue;
    const double dist = std::max(std::sqrt(dist2), kDistFloor);
    const Vec3 n = d * (1.0 / dist);
    const double gap = dist - (a.r + b.r);

    const double r_eff = effective_radius(a.r, b.r);
    const double m_eff = effective_mass(a.m, b.m);
    const Vec3 arm_a = n * (-(a.r + 0.5 * gap));
    const Vec3 arm_b = n * (b.r + 0.5 * gap);
    const Vec3 v_rel =
        (a.v + cross(a.omega, arm_a)) - (b.v + cross(b.omega, arm_b));
    const double vn = dot(v_rel, n);

    const NormalForce nf = normal_force(gap, vn, m_eff, r_eff, mat_.gamma, mat_);
    Vec3 F = n * nf.total;

    if (gap < 0.0) {
      ++st.contacts;
      st.max_rel_penetration = std::max(st.max_rel_penetration, -gap / r_eff);
      Vec3& xi = contacts_.spring(ContactTable::pair_key(a.id, b.id), step_);
      const Vec3 vt = v_rel - n * vn;
      const Vec3 ft =
          tangential_friction_force(xi, vt, n, nf.repulsive, mu, mat_.k_T, dt);
      F += ft;
      const Vec3 m_roll = rolling_resistance_torque(
          a.omega - b.omega, n, nf.repulsive, r_eff, mat_.mu_R,
          params_.rolling_deadband);
      torque[static_cast<size_t>(i)] += cross(arm_a, F) + m_roll;
      torque[static_cast<size_t>(j)] += cross(arm_b, F * -1.0) - m_roll;
    } else {
      contacts_.touch(ContactTable::pair_key(a.id, b.id), step_);
    }
    force[static_cast<size_t>(i)] += F;
    force[static_cast<size_t>(j)] -= F;
  }
}

void Simulation::eval_walls(int begin, int end, std::vector<Vec3>& force,
                            std::vector<Vec3>& torque, StepStats& st) {
  const double dt = params_.dt;
  for (int i = begin; i < end; ++i) {
    const Particle& p = particles_[static_cast<size_t>(i)];
    if (!p.active) continue;
    for (size_t wi = 0; wi < geom_.walls.size(); ++wi) {
      const WallState& ws = wall_states_[wi];
      if (!ws.active) continue;
      const InteractionClass cls = geom_.walls[wi].cls;
      const double gc = g_cut_[static_cast<int>(cls)];
      const WallGap wg = particle_wall_gap(p.r_G, p.r, ws, cls);
      if (wg.gap >= gc) continue;

      const double gamma = mat_.gamma_for(cls);
      const Vec3 arm = wg.normal * (-(p.r + 0.5 * wg.gap));
      const Vec3 v_rel = (p.v + cross(p.omega, arm)) - wg.vel;
      const double vn = dot(v_rel, wg.normal);
      const NormalForce nf = normal_force(wg.gap, vn, p.m, p.r, gamma, mat_);
      Vec3 F = wg.normal * nf.total;

      if (wg.gap < 0.0) {
        ++st.contacts;
        st.max_rel_penetration =
            std::max(st.max_rel_penetration, -wg.gap / p.r);
        const uint64_t key =
            ContactTable::wall_key(geom_.walls[wi].id, p.id);
        Vec3& xi = contacts_.spring(key, step_);
        const Vec3 vt = v_rel - wg.normal * vn;
        const Vec3 ft = tangential_friction_force(
            xi, vt, wg.normal, nf.repulsive, mat_.mu_for(cls), mat_.k_T, dt);
        F += ft;
        const Vec3 m_roll = rolling_resistance_torque(
            p.omega, wg.normal, nf.repulsive, p.r, mat_.mu_R,
            params_.rolling_deadband);
        torque[static_cast<size_t>(i)] += cross(arm, F) + m_roll;
      } else {
        contacts_.touch(ContactTable::wall_key(geom_.walls[wi].id, p.id),
                        step_);
      }
      force[static_cast<size_t>(i)] += F;
    }
  }
}

void Simulation::compute_forces() {
  const size_t n = particles_.size();
  stats_ = StepStats{};

  wall_states_.resize(geom_.walls.size());
  for (size_t wi = 0; wi < geom_.walls.size(); ++wi)
    wall_states_[wi] = geom_.wall_state(geom_.walls[wi], time_);

  static thread_local std::vector<Vec3> f_buf, t_buf;
  f_buf.assign(n, Vec3{0.0, 0.0, 0.0});
  t_buf.assign(n, Vec3{0.0, 0.0, 0.0});

  const int threads = params_.force_threads;
  if (threads <= 1) {
    eval_pairs(nlist_, f_buf, t_buf, stats_);
    eval_walls(0, static_cast<int>(n), f_buf, t_buf, stats_);
  } else {
    // Spring entries are created serially so the threaded pass never rehashes
    // the shared table.
    for (const auto& [i, j] : nlist_) {
      const Particle& a = particles_[static_cast<size_t>(i)];
      const Particle& b = particles_[static_cast<size_t>(j)];
      if (!a.active || !b.active) continue;
      Vec3 d = a.r_G - b.r_G;
      d.y = min_image_dy(d.y, params_.L_y);
      const double sum_r = a.r + b.r;
      if (norm2(d) < sum_r * sum_r)
        contacts_.spring(ContactTable::pair_key(a.id, b.id), step_);
    }
    for (size_t i = 0; i < n; ++i) {
      const Particle& p = particles_[i];
      if (!p.active) continue;
      for (size_t wi = 0; wi < geom_.walls.size(); ++wi) {
        if (!wall_states_[wi].active) continue;
        const WallGap wg = particle_wall_gap(p.r_G, p.r, wall_states_[wi],
                                             geom_.walls[wi].cls);
        if (wg.gap < 0.0)
          contacts_.spring(ContactTable::wall_key(geom_.walls[wi].id, p.id),
                           step_);
      }
    }

    std::vector<std::vector<Vec3>> fs(static_cast<size_t>(threads)),
        ts(static_cast<size_t>(threads));
    std::vector<StepStats> sts(static_cast<size_t>(threads));
    std::vector<std::thread> pool;
    const size_t pair_chunk = (nlist_.size() + threads - 1) / threads;
    const size_t part_chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        auto& f = fs[static_cast<size_t>(t)];
        auto& tq = ts[static_cast<size_t>(t)];
        f.assign(n, Vec3{0.0, 0.0, 0.0});
        tq.assign(n, Vec3{0.0, 0.0, 0.0});
        const size_t p0 = std::min(nlist_.size(), t * pair_chunk);
        const size_t p1 = std::min(nlist_.size(), p0 + pair_chunk);
        eval_pairs({nlist_.data() + p0, p1 - p0}, f, tq,
                   sts[static_cast<size_t>(t)]);
        const size_t w0 = std::min(n, t * part_chunk);
        const size_t w1 = std::min(n, w0 + part_chunk);
        eval_walls(static_cast<int>(w0), static_cast<int>(w1), f, tq,
                   sts[static_cast<size_t>(t)]);
      });
    }
    for (auto& th : pool) th.join();
    for (int t = 0; t < threads; ++t) {  // fixed order keeps sums bit-stable
      for (size_t i = 0; i < n; ++i) {
        f_buf[i] += fs[static_cast<size_t>(t)][i];
        t_buf[i] += ts[static_cast<size_t>(t)][i];
      }
      stats_.pair_checks += sts[static_cast<size_t>(t)].pair_checks;
      stats_.contacts += sts[static_cast<size_t>(t)].contacts;
      stats_.max_rel_penetration =
          std::max(stats_.max_rel_penetration,
                   sts[static_cast<size_t>(t)].max_rel_penetration);
    }
  }

  for (size_t i = 0; i < n; ++i) {
    Particle& p = particles_[i];
    if (!p.active) {
      p.f = {0.0, 0.0, 0.0};
      p.tau = {0.0, 0.0, 0.0};
      continue;
    }
    p.f = f_buf[i];
    if (params_.gravity_on) p.f += mat_.g * p.m;
    p.tau = t_buf[i];
  }
}

void Simulation::step() {
  if (!forces_valid_) {
    compute_forces();
    forces_valid_ = true;
  }
  const double dt = params_.dt;
  const double half = 0.5 * dt;

  for (Particle& p : particles_) {
    if (!p.active) continue;
    p.v += p.f * (half / p.m);
    p.omega += p.tau * (half / p.I_G);
    p.r_G += p.v * dt;
    p.r_G.y = wrap_y(p.r_G.y, params_.L_y);
  }
  time_ += dt;
  ++step_;

  for (Particle& p : particles_) {
    if (!p.active) continue;
    if ((p.r_G.x > params_.kill_x_min && p.r_G.z < params_.kill_z) ||
        p.r_G.x > params_.kill_x_max) {
      p.active = false;
      p.v = {0.0, 0.0, 0.0};
      p.omega = {0.0, 0.0, 0.0};
    }
  }

  if (neighbors_stale()) rebuild_neighbors();
  compute_forces();

  double max_v2 = 0.0;
  int active = 0;
  for (Particle& p : particles_) {
    if (!p.active) continue;
    p.v += p.f * (half / p.m);
    p.omega += p.tau * (half / p.I_G);
    max_v2 = std::max(max_v2, norm2(p.v));
    ++active;
  }
  stats_.max_speed = std::sqrt(max_v2);
  stats_.active_count = active;

  if (params_.compact_interval > 0 &&
      step_ % static_cast<uint32_t>(params_.compact_interval) == 0)
    contacts_.compact(step_);
}

void Simulation::advance(double duration) {
  const auto n = static_cast<int64_t>(std::ceil(duration / params_.dt - 1e-9));
  for (int64_t k = 0; k < n; ++k) step();
}

}  // namespace recoat
