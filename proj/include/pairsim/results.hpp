#pragma once

#include <iosfwd>
#include <string>

#include "pairsim/analyze.hpp"
#include "pairsim/config.hpp"

namespace pairsim {

// Results document: schema tag, resolved config, generation/selection
// counters, calibration, per-setting correlations, and the inequality
// results. Pure function of (cfg, output), so identical inputs give
// identical bytes. No paths, hostnames, or timestamps.
std::string results_document(const RunConfig& cfg, const AnalysisOutput& out);

// <prefix>.json plus the plot-data sidecars:
//   <prefix>_energy_sum.csv, <prefix>_dt.csv   (bin_center,count)
//   <prefix>_bell.csv, <prefix>_wigner.csv     (case_id,measured,sigma,qm,limit)
void write_run_outputs(const std::string& prefix, const RunConfig& cfg,
                       const AnalysisOutput& out);

// The two published reference tables as CSVs under `dir`:
// bell_reference.csv and wigner_reference.csv.
void emit_reference_tables(const std::string& dir);

}  // namespace pairsim
