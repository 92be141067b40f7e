#include <doctest.h>

#include <cmath>

#include "pairsim/errors.hpp"
#include "pairsim/estimators.hpp"

using namespace pairsim;

namespace {

const MeasurementAxis kA(0.0);
const MeasurementAxis kB(90.0);

OutcomeCounts counts_from(std::uint64_t pp, std::uint64_t pm, std::uint64_t mp,
                          std::uint64_t mm) {
  OutcomeCounts c;
  c.true_counts = {pp, pm, mp, mm};
  return c;
}

// Synthetic sample with raw moment m: aligned pairs get (1+m)/4 of the
// weight each, opposed pairs (1-m)/4.
OutcomeCounts sample_with_moment(double m, std::uint64_t n) {
  const auto same = static_cast<std::uint64_t>(std::llround(n * (1 + m) / 4));
  const auto diff = n / 2 - same;
  return counts_from(same, diff, diff, same);
}

}  // namespace

TEST_CASE("cell layout and merge arithmetic") {
  CHECK(OutcomeCounts::cell(+1, +1) == 0);
  CHECK(OutcomeCounts::cell(+1, -1) == 1);
  CHECK(OutcomeCounts::cell(-1, +1) == 2);
  CHECK(OutcomeCounts::cell(-1, -1) == 3);

  OutcomeCounts c;
  c.add(+1, +1, false);
  c.add(-1, +1, true);
  OutcomeCounts d;
  d.add(-1, +1, true);
  c.merge(d);
  CHECK(c.true_counts[0] == 1);
  CHECK(c.random_counts[2] == 2);
  CHECK(c.n_true() == 1);
  CHECK(c.n_random() == 2);
}

TEST_CASE("uncalibrated estimate reproduces the raw moment") {
  // 60/40 split between aligned and opposed outcomes: m = 0.2.
  const OutcomeCounts c = counts_from(30, 20, 20, 30);
  const CorrelationEstimate est =
      estimate_correlation(c, kA, kB, Calibration::none(), 0.0);
  CHECK(est.raw_moment == doctest::Approx(0.2));
  CHECK(est.e_value == doctest::Approx(0.2));
  CHECK(est.n_events == 100);
  CHECK(est.sum_weight == doctest::Approx(100.0));
  CHECK(est.counts[0] + est.counts[1] + est.counts[2] + est.counts[3] ==
        doctest::Approx(est.sum_weight));
  // Unweighted sample: N_eff is the plain count.
  CHECK(est.n_effective == doctest::Approx(100.0));
  CHECK(est.sigma ==
        doctest::Approx(std::sqrt((1 - 0.2 * 0.2) / 100.0)));
  CHECK(est.axis_a.angle_deg == 0.0);
  CHECK(est.axis_b.angle_deg == 90.0);
}

TEST_CASE("analyzer calibration divides out the dilution") {
  const OutcomeCounts c = counts_from(2600, 2400, 2400, 2600);  // m = 0.04
  const Calibration cal = Calibration::analyzer(0.25);
  const CorrelationEstimate est = estimate_correlation(c, kA, kB, cal, 0.0);
  const double scale = std::pow(2.0 / M_PI, 2) * 0.25 * 0.25;
  CHECK(cal.scale() == doctest::Approx(scale));
  CHECK(est.e_value == doctest::Approx(0.04 / scale));
  CHECK(est.sigma ==
        doctest::Approx(std::sqrt((1 - 0.04 * 0.04) / 10000.0) / scale));
}

TEST_CASE("random subtraction reweights the cells") {
  OutcomeCounts c = counts_from(700, 300, 300, 700);  // m_true = 0.4, N = 2000
  c.random_counts = {120, 120, 120, 120};             // flat accidentals
  const double w = 1.0 / 12.0;
  const CorrelationEstimate est =
      estimate_correlation(c, kA, kB, Calibration::none(), w);

  const double expect_cell_same = 700.0 - w * 120.0;
  const double expect_cell_diff = 300.0 - w * 120.0;
  CHECK(est.counts[0] == doctest::Approx(expect_cell_same));
  CHECK(est.counts[1] == doctest::Approx(expect_cell_diff));
  const double sum_w = 2000.0 - w * 480.0;
  CHECK(est.sum_weight == doctest::Approx(sum_w));
  CHECK(est.n_events == 2480);

  const double m = (2 * expect_cell_same - 2 * expect_cell_diff) / sum_w;
  CHECK(est.raw_moment == doctest::Approx(m));

  // Effective sample size from the weighted counts.
  const double sum_w2 = 2000.0 + w * w * 480.0;
  const double n_eff = sum_w * sum_w / sum_w2;
  CHECK(est.n_effective == doctest::Approx(n_eff));
  CHECK(est.sigma == doctest::Approx(std::sqrt((1 - m * m) / n_eff)));

  // weight 0 ignores the random class entirely.
  const CorrelationEstimate no_sub =
      estimate_correlation(c, kA, kB, Calibration::none(), 0.0);
  CHECK(no_sub.raw_moment == doctest::Approx(0.4));
  CHECK(no_sub.n_events == 2000);
}

TEST_CASE("estimator contract errors") {
  const OutcomeCounts empty;
  CHECK_THROWS_AS(
      estimate_correlation(empty, kA, kB, Calibration::none(), 0.0),
      EmptySampleError);

  const OutcomeCounts c = counts_from(10, 10, 10, 10);
  CHECK_THROWS_AS(estimate_correlation(c, kA, kB, {2.0 / M_PI, 0.0}, 0.0),
                  ConfigError);
  CHECK_THROWS_AS(estimate_correlation(c, kA, kB, {0.0, 0.25}, 0.0),
                  ConfigError);
  CHECK_THROWS_AS(
      estimate_correlation(c, kA, kB, Calibration::none(), -0.5),
      ConfigError);

  // Only random counts and weight zero: nothing carries weight.
  OutcomeCounts only_random;
  only_random.random_counts = {5, 5, 5, 5};
  CHECK_THROWS_AS(
      estimate_correlation(only_random, kA, kB, Calibration::none(), 0.0),
      EmptySampleError);
}

TEST_CASE("self calibration inverts the singlet moment") {
  MomentSums sums;
  // 10000 entries at <cos> = -0.03125 = -(0.25^2)/2, zero spread beyond the
  // binomial-like variance implied by cos^2 sums.
  const int n = 10000;
  for (int i = 0; i < n / 2; ++i) {
    sums.add(-0.2, 1.0);
    sums.add(0.1375, 1.0);
  }
  const SelfCalibration cal = self_calibrate_analyzing_power(sums);
  CHECK(cal.ok);
  CHECK(cal.mean_cos == doctest::Approx(-0.03125));
  CHECK(cal.a_est == doctest::Approx(0.25));
  CHECK(cal.n_entries == static_cast<std::uint64_t>(n));
  // sigma_A = sigma_mu / a_est.
  CHECK(cal.sigma_a == doctest::Approx(cal.sigma_mean / cal.a_est));
  CHECK(cal.sigma_mean > 0.0);

  // A positive moment cannot be inverted; reported, not thrown.
  MomentSums flat;
  for (int i = 0; i < 100; ++i) flat.add(0.01, 1.0);
  const SelfCalibration bad = self_calibrate_analyzing_power(flat);
  CHECK_FALSE(bad.ok);
  CHECK(bad.mean_cos == doctest::Approx(0.01));
  CHECK(bad.a_est == 0.0);

  CHECK_THROWS_AS(self_calibrate_analyzing_power(MomentSums{}),
                  EmptySampleError);

  MomentSums cancelled;
  cancelled.add(0.5, 1.0);
  cancelled.add(0.5, -1.0);
  CHECK_THROWS_AS(self_calibrate_analyzing_power(cancelled), DataError);
}

TEST_CASE("moment sums merge like concatenation") {
  MomentSums a, b, all;
  RngStream rng(3, 0, RngStream::kBootstrap);
  for (int i = 0; i < 1000; ++i) {
    const double c = rng.uniform(-1.0, 1.0);
    const double w = i % 3 ? 1.0 : -1.0 / 12.0;
    (i < 500 ? a : b).add(c, w);
    all.add(c, w);
  }
  a.merge(b);
  CHECK(a.sum_w == doctest::Approx(all.sum_w));
  CHECK(a.sum_w2 == doctest::Approx(all.sum_w2));
  CHECK(a.sum_wc == doctest::Approx(all.sum_wc));
  CHECK(a.sum_wc2 == doctest::Approx(all.sum_wc2));
  CHECK(a.n_entries == all.n_entries);
}

TEST_CASE("bootstrap spread agrees with the plug-in error") {
  const std::uint64_t n = 100000;
  const OutcomeCounts c = sample_with_moment(-0.05, n);
  const CorrelationEstimate est =
      estimate_correlation(c, kA, kB, Calibration::none(), 0.0);

  RngStream rng(12345, 0, RngStream::kBootstrap);
  const double boot = bootstrap_sigma(c, kA, kB, Calibration::none(), 0.0, 200,
                                      rng);
  CHECK(boot / est.sigma > 0.75);
  CHECK(boot / est.sigma < 1.25);

  // Halving the sample scales the error by sqrt(2).
  const OutcomeCounts c2 = sample_with_moment(-0.05, n / 2);
  RngStream rng2(12346, 0, RngStream::kBootstrap);
  const double boot2 = bootstrap_sigma(c2, kA, kB, Calibration::none(), 0.0,
                                       200, rng2);
  CHECK(boot2 / boot > std::sqrt(2.0) * 0.85);
  CHECK(boot2 / boot < std::sqrt(2.0) * 1.15);

  RngStream rng5(12347, 0, RngStream::kBootstrap);
  CHECK_THROWS_AS(
      bootstrap_sigma(c, kA, kB, Calibration::none(), 0.0, 49, rng5),
      ConfigError);
}

TEST_CASE("bootstrap resamples the random class too") {
  OutcomeCounts c = sample_with_moment(0.1, 20000);
  c.random_counts = {500, 500, 500, 500};
  const double w = 1.0 / 12.0;
  const CorrelationEstimate est =
      estimate_correlation(c, kA, kB, Calibration::none(), w);
  RngStream rng(777, 0, RngStream::kBootstrap);
  const double boot =
      bootstrap_sigma(c, kA, kB, Calibration::none(), w, 200, rng);
  CHECK(boot / est.sigma > 0.7);
  CHECK(boot / est.sigma < 1.3);
}
