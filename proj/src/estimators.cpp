#include "pairsim/estimators.hpp"

#include <cmath>
#include <vector>

#include "pairsim/errors.hpp"

namespace pairsim {

namespace {
constexpr double kCellSign[4] = {+1.0, -1.0, -1.0, +1.0};
}

std::uint64_t OutcomeCounts::n_true() const {
  return true_counts[0] + true_counts[1] + true_counts[2] + true_counts[3];
}

std::uint64_t OutcomeCounts::n_random() const {
  return random_counts[0] + random_counts[1] + random_counts[2] +
         random_counts[3];
}

CorrelationEstimate estimate_correlation(const OutcomeCounts& counts,
                                         MeasurementAxis axis_a,
                                         MeasurementAxis axis_b,
                                         const Calibration& cal,
                                         double random_weight) {
  if (!(cal.analyzing_power > 0.0) || !(cal.dilution > 0.0)) {
    throw ConfigError("calibration requires a positive analyzing power");
  }
  if (random_weight < 0.0) {
    throw ConfigError("random subtraction weight cannot be negative");
  }

  CorrelationEstimate est;
  est.axis_a = axis_a;
  est.axis_b = axis_b;
  est.n_events = counts.n_true();
  if (random_weight > 0.0) est.n_events += counts.n_random();
  if (est.n_events == 0) {
    throw EmptySampleError("no pairs entered the correlation estimate");
  }

  double sum_w = 0.0, sum_w2 = 0.0, sum_ws = 0.0;
  for (int i = 0; i < 4; ++i) {
    const auto t = static_cast<double>(counts.true_counts[i]);
    const auto r = static_cast<double>(counts.random_counts[i]);
    est.counts[i] = t - random_weight * r;
    sum_w += est.counts[i];
    sum_w2 += t + random_weight * random_weight * r;
    sum_ws += kCellSign[i] * est.counts[i];
  }
  if (sum_w == 0.0) {
    throw DataError(
        "subtraction cancelled the total weight; correlation is undefined");
  }

  est.sum_weight = sum_w;
  est.raw_moment = sum_ws / sum_w;
  est.n_effective = sum_w * sum_w / sum_w2;
  const double var = std::max(0.0, 1.0 - est.raw_moment * est.raw_moment);
  est.e_value = est.raw_moment / cal.scale();
  est.sigma = std::sqrt(var / est.n_effective) / cal.scale();
  return est;
}

void MomentSums::add(double cos_dphi, double w) {
  sum_w += w;
  sum_w2 += w * w;
  sum_wc += w * cos_dphi;
  sum_wc2 += w * cos_dphi * cos_dphi;
  ++n_entries;
}

void MomentSums::merge(const MomentSums& o) {
  sum_w += o.sum_w;
  sum_w2 += o.sum_w2;
  sum_wc += o.sum_wc;
  sum_wc2 += o.sum_wc2;
  n_entries += o.n_entries;
}

SelfCalibration self_calibrate_analyzing_power(const MomentSums& sums) {
  if (sums.n_entries == 0) {
    throw EmptySampleError("no pairs entered the analyzing-power calibration");
  }
  if (sums.sum_w == 0.0) {
    throw DataError("calibration weight sum is zero");
  }

  SelfCalibration out;
  out.n_entries = sums.n_entries;
  out.mean_cos = sums.sum_wc / sums.sum_w;
  const double var =
      std::max(0.0, sums.sum_wc2 / sums.sum_w - out.mean_cos * out.mean_cos);
  const double n_eff = sums.sum_w * sums.sum_w / sums.sum_w2;
  out.sigma_mean = std::sqrt(var / n_eff);
  if (out.mean_cos >= 0.0) {
    return out;  // no real root; caller sees ok == false and the moment
  }
  out.ok = true;
  out.a_est = std::sqrt(-2.0 * out.mean_cos);
  out.sigma_a = out.sigma_mean / out.a_est;
  return out;
}

double bootstrap_sigma(const OutcomeCounts& counts, MeasurementAxis axis_a,
                       MeasurementAxis axis_b, const Calibration& cal,
                       double random_weight, int n_resamples, RngStream& rng) {
  if (n_resamples < 50) {
    throw ConfigError("bootstrap needs at least 50 resamples");
  }

  // Pool the cells an estimate would see; each event is fully described by
  // the cell it lands in, so event-level resampling is a multinomial draw.
  struct Cell {
    double cum_prob;
    int outcome_cell;
    bool is_random;
  };
  std::vector<Cell> pool;
  std::uint64_t n_total = counts.n_true();
  if (random_weight > 0.0) n_total += counts.n_random();
  if (n_total == 0) {
    throw EmptySampleError("no pairs available for bootstrap resampling");
  }

  double cum = 0.0;
  for (int i = 0; i < 4; ++i) {
    if (counts.true_counts[i] > 0) {
      cum += static_cast<double>(counts.true_counts[i]) / n_total;
      pool.push_back({cum, i, false});
    }
  }
  if (random_weight > 0.0) {
    for (int i = 0; i < 4; ++i) {
      if (counts.random_counts[i] > 0) {
        cum += static_cast<double>(counts.random_counts[i]) / n_total;
        pool.push_back({cum, i, true});
      }
    }
  }
  pool.back().cum_prob = 1.0;

  std::vector<double> replicas;
  replicas.reserve(static_cast<size_t>(n_resamples));
  for (int b = 0; b < n_resamples; ++b) {
    OutcomeCounts resampled;
    for (std::uint64_t k = 0; k < n_total; ++k) {
      const double u = rng.uniform();
      for (const Cell& c : pool) {
        if (u < c.cum_prob) {
          auto& cells =
              c.is_random ? resampled.random_counts : resampled.true_counts;
          ++cells[static_cast<size_t>(c.outcome_cell)];
          break;
        }
      }
    }
    replicas.push_back(
        estimate_correlation(resampled, axis_a, axis_b, cal, random_weight)
            .e_value);
  }

  double mean = 0.0;
  for (double e : replicas) mean += e;
  mean /= static_cast<double>(replicas.size());
  double ss = 0.0;
  for (double e : replicas) ss += (e - mean) * (e - mean);
  return std::sqrt(ss / static_cast<double>(replicas.size() - 1));
}

}  // namespace pairsim
