#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "pairsim/kinematics.hpp"
#include "pairsim/polarimeter.hpp"
#include "pairsim/spin_models.hpp"
#include "pairsim/timing.hpp"

namespace pairsim {

enum class ASource { SelfCalibrated, Fixed };

struct AnalysisOptions {
  double ke_cut_mev = 1.0;      // relative kinetic-energy selection
  double energy_bin_mev = 1.0;  // energy-sum spectrum binning
  ASource a_source = ASource::SelfCalibrated;
  bool subtract_randoms = true;
  int bootstrap_resamples = 0;  // 0 disables the bootstrap cross-check
  std::vector<int> bell_case_ids = {1, 2, 3, 4, 5, 6, 7, 8};
  std::vector<int> wigner_case_ids = {1, 2, 3, 4, 5, 6};

  void validate() const;
};

struct RunConfig {
  std::uint64_t seed = 0;
  bool seed_set = false;  // no implicit seed, ever
  std::uint64_t n_events = 0;
  SourceModel source;
  bool truth_output = true;
  GeneratorConfig generator;
  AnalyzerConfig analyzer;
  TimingConfig timing;
  AnalysisOptions analysis;

  void validate() const;
};

// Flat key = value text, '#' comments, keys carry their units. Unknown or
// duplicated keys are ConfigErrors, as are malformed values (with the line).
RunConfig parse_run_config(std::istream& in);
RunConfig load_run_config(const std::string& path);

// Apply one "key=value" override on top of an existing config (CLI --set).
void apply_override(RunConfig& cfg, const std::string& assignment);

// Every key in a fixed order with round-trippable values; parsing these
// lines reproduces the config exactly. Used to embed the resolved config in
// the results document.
std::vector<std::pair<std::string, std::string>> to_key_values(
    const RunConfig& cfg);

}  // namespace pairsim
