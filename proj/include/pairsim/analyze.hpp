#pragma once

#include <span>
#include <string>
#include <vector>

#include "pairsim/config.hpp"
#include "pairsim/estimators.hpp"
#include "pairsim/event.hpp"
#include "pairsim/histogram.hpp"
#include "pairsim/inequalities.hpp"
#include "pairsim/kinematics.hpp"
#include "pairsim/simulate.hpp"
#include "pairsim/timing.hpp"

namespace pairsim {

struct CorrelationRecord {
  CorrelationEstimate estimate;
  double bootstrap_sigma = 0.0;
  bool has_bootstrap = false;
};

// Everything run_analyze/run_pipeline learn from a sample. Serialization to
// the results document lives in results.cpp; this struct is the typed form
// the tests poke at.
struct AnalysisOutput {
  bool empty_sample = false;

  SelectionReport selection;
  std::uint64_t fail_scatter_band = 0;
  std::uint64_t n_true = 0;
  std::uint64_t n_random = 0;
  std::uint64_t n_outside = 0;

  bool subtraction_enabled = false;
  SubtractionWeights subtraction;

  SelfCalibration self_calibration;
  bool calibration_fell_back = false;  // self-cal failed, fixed A used
  double a_used = 0.0;

  std::vector<CorrelationRecord> correlations;
  std::vector<InequalityResult> bell;
  std::vector<InequalityResult> wigner;

  Histogram energy_sum{0.0, 0.0, 1.0};
  Histogram dt{0.0, 0.0, 1.0};

  GenerationReport generation;
  bool has_generation = false;
};

// Chunked accumulation: events are folded in fixed blocks of kChunkEvents
// and block results merged in block order, so the floating-point totals are
// identical for any thread count (and for the serial reference).
AnalysisOutput analyze_events_serial(const RunConfig& cfg,
                                     std::span<const PairEvent> events,
                                     const GenerationReport* generation);
AnalysisOutput analyze_events(const RunConfig& cfg,
                              std::span<const PairEvent> events, int n_threads,
                              const GenerationReport* generation);

// Stream an event file through the same accumulator without materializing it.
AnalysisOutput analyze_file(const RunConfig& cfg, const std::string& path);

// Generate and analyze in one pass; chunks are produced, folded, and
// discarded, so memory stays flat in n_events.
AnalysisOutput run_pipeline_serial(const RunConfig& cfg);
AnalysisOutput run_pipeline(const RunConfig& cfg, int n_threads);

}  // namespace pairsim
