#include "pairsim/timing.hpp"

#include <cmath>
#include <string>

#include "pairsim/errors.hpp"

namespace pairsim {

void TimingConfig::validate() const {
  if (!(rf_frequency_mhz > 0.0)) {
    throw ConfigError("rf_frequency_mhz must be positive");
  }
  if (!(tdc_range_ns > 0.0) || !(tdc_bin_ns > 0.0)) {
    throw ConfigError("tdc_range_ns and tdc_bin_ns must be positive");
  }
  if (!(true_window_ns > 0.0) || !(true_window_ns < hardware_window_ns)) {
    throw ConfigError("need 0 < true_window_ns < hardware_window_ns");
  }
  if (hardware_window_ns > tdc_range_ns) {
    throw ConfigError("hardware_window_ns cannot exceed tdc_range_ns");
  }
  if (!(time_resolution_sigma_ns > 0.0)) {
    throw ConfigError("time_resolution_sigma_ns must be positive");
  }
  if (random_pair_fraction < 0.0 || random_pair_fraction > 1.0) {
    throw ConfigError("random_pair_fraction must lie in [0, 1]");
  }
  if (flight_spread_ns < 0.0) {
    throw ConfigError("flight_spread_ns must be non-negative");
  }
}

int TimingConfig::max_bunch_offset() const {
  return static_cast<int>(std::floor(hardware_window_ns / bunch_period_ns()));
}

namespace {
double quantize(double t_ns, double bin_ns) {
  return std::floor(t_ns / bin_ns) * bin_ns;
}
}  // namespace

TimeStamps stamp_times(const TimingConfig& cfg, int bunch_offset,
                       RngStream& rng) {
  const double base = cfg.tdc_range_ns / 2.0;
  const double t1 = base + rng.uniform(0.0, cfg.flight_spread_ns) +
                    rng.gaussian(0.0, cfg.time_resolution_sigma_ns);
  const double t2 = base + rng.uniform(0.0, cfg.flight_spread_ns) +
                    rng.gaussian(0.0, cfg.time_resolution_sigma_ns) +
                    bunch_offset * cfg.bunch_period_ns();
  return {quantize(t1, cfg.tdc_bin_ns), quantize(t2, cfg.tdc_bin_ns)};
}

int sample_random_bunch_offset(const TimingConfig& cfg, RngStream& rng) {
  const int k_max = cfg.max_bunch_offset();
  if (k_max < 1) {
    throw ConfigError(
        "hardware_window_ns is shorter than one bunch period; no bucket is "
        "available for accidental pairs");
  }
  const auto idx = static_cast<int>(rng.uniform_int(2 * k_max));
  return idx < k_max ? idx + 1 : -(idx - k_max + 1);
}

CoincidenceClass classify_coincidence(const TimingConfig& cfg, double dt_ns) {
  const double a = std::fabs(dt_ns);
  if (a <= cfg.true_window_ns) return CoincidenceClass::True;
  if (a <= cfg.hardware_window_ns) return CoincidenceClass::Random;
  return CoincidenceClass::Outside;
}

SubtractionWeights random_subtraction_weights(const TimingConfig& cfg,
                                              std::uint64_t n_random_entries) {
  const double period = cfg.bunch_period_ns();
  const int in_true = static_cast<int>(std::floor(cfg.true_window_ns / period));
  const int in_side =
      static_cast<int>(std::floor(cfg.hardware_window_ns / period));

  SubtractionWeights w;
  w.true_teeth = 1 + 2 * in_true;  // the k = 0 tooth plus symmetric neighbours
  w.sideband_teeth = 2 * (in_side - in_true);
  if (w.sideband_teeth == 0 && n_random_entries > 0) {
    throw DataError("sideband contains no comb teeth but the sample holds " +
                    std::to_string(n_random_entries) +
                    " random-classified pairs; widen hardware_window_ns");
  }
  if (w.sideband_teeth > 0 && n_random_entries > 0) {
    w.weight = static_cast<double>(w.true_teeth) / w.sideband_teeth;
  }
  return w;
}

}  // namespace pairsim
