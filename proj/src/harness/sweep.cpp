#include "harness/sweep.hpp"

#include <atomic>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <thread>

#include "common/error.hpp"

namespace recoat {

namespace {

std::string run_dir(const std::string& base, size_t idx) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "run_%04zu", idx);
  return base + "/" + buf;
}

}  // namespace

SweepResult run_sweep(const RecoatConfig& base) {
  base.validate();
  const std::vector<double> gammas =
      base.sweep_gamma_rel.empty() ? std::vector<double>{base.gamma_rel}
                                   : base.sweep_gamma_rel;
  const std::vector<double> t0s = base.sweep_t0_rel.empty()
                                      ? std::vector<double>{base.t0_rel}
                                      : base.sweep_t0_rel;
  const std::vector<double> speeds =
      base.sweep_speed_rel.empty() ? std::vector<double>{base.blade_speed_rel}
                                   : base.sweep_speed_rel;
  const std::vector<double> gamma_ws =
      base.sweep_gamma_W_rel.empty() ? std::vector<double>{base.gamma_W_rel}
                                     : base.sweep_gamma_W_rel;
  const std::vector<uint64_t> seeds = base.sweep_seeds.empty()
                                          ? std::vector<uint64_t>{base.seed}
                                          : base.sweep_seeds;

  std::vector<RecoatConfig> runs;
  for (const double g : gammas)
    for (const double t0 : t0s)
      for (const double v : speeds)
        for (const double gw : gamma_ws)
          for (const uint64_t s : seeds) {
            RecoatConfig c = base;
            c.sweep_gamma_rel.clear();
            c.sweep_t0_rel.clear();
            c.sweep_speed_rel.clear();
            c.sweep_gamma_W_rel.clear();
            c.sweep_seeds.clear();
            c.gamma_rel = g;
            c.t0_rel = t0;
            c.t0_abs = -1.0;
            c.blade_speed_rel = v;
            c.blade_speed_abs = -1.0;
            c.gamma_W_rel = gw;
            c.seed = s;
            c.out_dir = run_dir(base.out_dir, runs.size());
            runs.push_back(std::move(c));
          }

  std::filesystem::create_directories(base.out_dir);
  SweepResult result;
  result.records.resize(runs.size());

  auto execute = [&](size_t i) {
    try {
      result.records[i] = run_recoat(runs[i]);
    } catch (const Error& e) {
      result.records[i].ok = false;
      result.records[i].error = e.what();
      result.records[i].seed = runs[i].seed;
      result.records[i].cfg_hash = config_hash(runs[i]);
    } catch (const std::exception& e) {
      result.records[i].ok = false;
      result.records[i].error = e.what();
      result.records[i].seed = runs[i].seed;
      result.records[i].cfg_hash = config_hash(runs[i]);
    }
  };

  const int threads = std::max(1, base.threads);
  if (threads == 1 || runs.size() <= 1) {
    for (size_t i = 0; i < runs.size(); ++i) execute(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    const int n_workers =
        static_cast<int>(std::min<size_t>(threads, runs.size()));
    for (int t = 0; t < n_workers; ++t)
      pool.emplace_back([&] {
        for (size_t i = next.fetch_add(1); i < runs.size();
             i = next.fetch_add(1))
          execute(i);
      });
    for (auto& th : pool) th.join();
  }

  for (const RunRecord& r : result.records)
    if (!r.ok) result.any_failed = true;
  write_records_csv(base.out_dir + "/sweep.csv", result.records);
  return result;
}

}  // namespace recoat
