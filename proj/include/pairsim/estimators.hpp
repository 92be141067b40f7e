#pragma once

#include <array>
#include <cstdint>

#include "pairsim/axis.hpp"
#include "pairsim/rng.hpp"

namespace pairsim {

// Outcome bookkeeping for one (axis_a, axis_b) setting. Counts are integers
// so parallel accumulation is an exact reduction; the sideband-subtraction
// weight is applied only when the estimate is formed.
struct OutcomeCounts {
  // Cell layout: index = (s1 < 0)*2 + (s2 < 0), i.e. ++, +-, -+, --.
  std::array<std::uint64_t, 4> true_counts{};
  std::array<std::uint64_t, 4> random_counts{};

  static int cell(int s1, int s2) {
    return (s1 < 0 ? 2 : 0) + (s2 < 0 ? 1 : 0);
  }
  void add(int s1, int s2, bool is_random) {
    auto& cells = is_random ? random_counts : true_counts;
    ++cells[static_cast<size_t>(cell(s1, s2))];
  }
  void merge(const OutcomeCounts& o) {
    for (int i = 0; i < 4; ++i) {
      true_counts[i] += o.true_counts[i];
      random_counts[i] += o.random_counts[i];
    }
  }
  std::uint64_t n_true() const;
  std::uint64_t n_random() const;
};

// How a raw ±1 product moment maps to a spin correlation. The left/right
// classification of an azimuth keeps only the first harmonic of the
// modulation and dilutes it by 2/pi per track, so the chain reports
// (2/pi)^2 A^2 E(a,b) and the estimator divides that back out. Direct
// outcome samples need no correction: factor 1, power 1.
struct Calibration {
  double dilution = 2.0 / M_PI;
  double analyzing_power = 0.25;

  static Calibration analyzer(double a) { return {2.0 / M_PI, a}; }
  static Calibration none() { return {1.0, 1.0}; }
  double scale() const {
    return dilution * dilution * analyzing_power * analyzing_power;
  }
};

struct CorrelationEstimate {
  MeasurementAxis axis_a, axis_b;
  double e_value = 0.0;
  double sigma = 0.0;
  double raw_moment = 0.0;
  // Weighted per-cell counts after subtraction, same layout as OutcomeCounts.
  std::array<double, 4> counts{};
  double sum_weight = 0.0;
  double n_effective = 0.0;
  std::uint64_t n_events = 0;  // entries that carried any weight
};

// random_weight is the sideband tooth ratio; pass 0 to ignore the random
// class entirely. Throws ConfigError for a non-positive analyzing power and
// EmptySampleError when no entry carries weight.
CorrelationEstimate estimate_correlation(const OutcomeCounts& counts,
                                         MeasurementAxis axis_a,
                                         MeasurementAxis axis_b,
                                         const Calibration& cal,
                                         double random_weight);

// Weighted running sums of cos(phi1 - phi2) over selected pairs, used by the
// analyzing-power self-calibration. Merged chunk-by-chunk in a fixed order so
// results do not depend on the thread count.
struct MomentSums {
  double sum_w = 0.0;
  double sum_w2 = 0.0;
  double sum_wc = 0.0;   // weight * cos
  double sum_wc2 = 0.0;  // weight * cos^2
  std::uint64_t n_entries = 0;

  void add(double cos_dphi, double w);
  void merge(const MomentSums& o);
};

// The singlet azimuthal modulation gives <cos(phi1-phi2)> = -A^2/2, so the
// data measure their own analyzing power: A = sqrt(-2 <cos>). A positive
// moment has no real root; that outcome is reported, not thrown, because it
// is the expected result for unpolarized input.
struct SelfCalibration {
  bool ok = false;
  double a_est = 0.0;
  double sigma_a = 0.0;
  double mean_cos = 0.0;
  double sigma_mean = 0.0;
  std::uint64_t n_entries = 0;
};

SelfCalibration self_calibrate_analyzing_power(const MomentSums& sums);

// Event-level bootstrap of the correlation estimate: resample the pooled
// true+random entries with replacement (multinomially over the eight cells),
// re-form the estimate, and report the spread over n_resamples replicas.
// Requires n_resamples >= 50.
double bootstrap_sigma(const OutcomeCounts& counts, MeasurementAxis axis_a,
                       MeasurementAxis axis_b, const Calibration& cal,
                       double random_weight, int n_resamples, RngStream& rng);

}  // namespace pairsim
