#pragma once

#include <cstdint>

#include "pairsim/rng.hpp"

namespace pairsim {

// Coincidence timing against a bunched beam. True pairs come from the same
// bunch; accidentals ride on a different bucket, so the time-difference
// spectrum is a comb at multiples of the bunch period.
struct TimingConfig {
  double rf_frequency_mhz = 43.0;
  double hardware_window_ns = 150.0;  // |dt| <= this is kept by the hardware
  double true_window_ns = 20.0;       // |dt| <= this counts as a true pair
  double tdc_bin_ns = 1.0;            // quantization step of the digitizer
  double tdc_range_ns = 350.0;
  double time_resolution_sigma_ns = 0.5;
  double random_pair_fraction = 0.0;  // accidentals injected by the generator
  // Per-track flight-path spread, uniform in [0, this]. Kept small against
  // the true window so genuine pairs classify correctly.
  double flight_spread_ns = 5.0;

  void validate() const;
  double bunch_period_ns() const { return 1000.0 / rf_frequency_mhz; }
  // Largest bunch offset whose comb tooth still lands in the hardware window.
  int max_bunch_offset() const;
};

struct TimeStamps {
  double t1_ns = 0.0;
  double t2_ns = 0.0;
};

// Stamp one pair. bunch_offset shifts track 2 by that many beam buckets;
// true pairs use offset 0. Times are quantized to the TDC bin width.
TimeStamps stamp_times(const TimingConfig& cfg, int bunch_offset,
                       RngStream& rng);

// Draw a nonzero bunch offset for an accidental pair, uniform over the
// offsets that fit the hardware window (both signs).
int sample_random_bunch_offset(const TimingConfig& cfg, RngStream& rng);

enum class CoincidenceClass { True, Random, Outside };

CoincidenceClass classify_coincidence(const TimingConfig& cfg, double dt_ns);

// Statistical weight for sideband subtraction: the ratio of comb teeth under
// the true window to teeth in the sideband, counted in whole bunch periods.
// Entries classified Random enter the estimators with weight -w so the
// accidental contamination of the true window cancels in expectation.
struct SubtractionWeights {
  int true_teeth = 0;
  int sideband_teeth = 0;
  double weight = 0.0;  // true_teeth / sideband_teeth
};

// n_random_entries is the number of Random-classified pairs the caller wants
// to subtract. A sideband holding no comb teeth cannot estimate them: that
// combination raises DataError. With nothing to subtract the weight is moot
// and reported as 0.
SubtractionWeights random_subtraction_weights(const TimingConfig& cfg,
                                              std::uint64_t n_random_entries);

}  // namespace pairsim
