#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "pairsim/analyze.hpp"
#include "pairsim/config.hpp"
#include "pairsim/results.hpp"
#include "pairsim/simulate.hpp"

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

pairsim::RunConfig bench_config(std::uint64_t n_events) {
  pairsim::RunConfig cfg;
  cfg.seed = 20260816;
  cfg.seed_set = true;
  cfg.n_events = n_events;
  cfg.source = {pairsim::SourceKind::QuantumSinglet,
                pairsim::ResponsePreset::Sign};
  cfg.generator.background_fraction = 0.05;
  cfg.generator.carbon_to_hydrogen_ratio = 0.5;
  cfg.timing.random_pair_fraction = 0.02;
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  const std::uint64_t n_events =
      argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 200000;
  const pairsim::RunConfig cfg = bench_config(n_events);

  std::printf("pipeline benchmark, %llu events (generate + analyze)\n",
              static_cast<unsigned long long>(n_events));
  std::printf("%-18s %10s %10s\n", "variant", "time [s]", "speedup");

  auto t0 = std::chrono::steady_clock::now();
  const pairsim::AnalysisOutput ref = pairsim::run_pipeline_serial(cfg);
  const double t_serial = seconds_since(t0);
  std::printf("%-18s %10.3f %10s\n", "serial reference", t_serial, "1.00x");

  const std::string ref_doc = pairsim::results_document(cfg, ref);
  for (int threads : {1, 2, 4, 8}) {
    t0 = std::chrono::steady_clock::now();
    const pairsim::AnalysisOutput out = pairsim::run_pipeline(cfg, threads);
    const double t = seconds_since(t0);
    const bool same = pairsim::results_document(cfg, out) == ref_doc;
    std::printf("%-18s %10.3f %9.2fx   %s\n",
                ("openmp " + std::to_string(threads) + "t").c_str(), t,
                t_serial / t, same ? "matches serial" : "MISMATCH");
    if (!same) return 1;
  }
  return 0;
}
