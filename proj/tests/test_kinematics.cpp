#include <doctest.h>

#include <cmath>
#include <vector>

#include "pairsim/errors.hpp"
#include "pairsim/four_vector.hpp"
#include "pairsim/kinematics.hpp"

using namespace pairsim;

namespace {

FourVector proton(double px, double py, double pz) {
  const double e = std::sqrt(px * px + py * py + pz * pz +
                             kProtonMassMeV * kProtonMassMeV);
  return {e, px, py, pz};
}

std::vector<PairEvent> make_signal(Channel ch, int n, std::uint64_t seed) {
  GeneratorConfig cfg;
  std::vector<PairEvent> out;
  out.reserve(static_cast<size_t>(n));
  std::uint64_t regen = 0;
  for (int i = 0; i < n; ++i) {
    RngStream rng(seed, static_cast<std::uint64_t>(i), RngStream::kKinematics);
    out.push_back(generate_signal_event(cfg, ch, static_cast<std::uint64_t>(i),
                                        rng, &regen));
  }
  return out;
}

}  // namespace

TEST_CASE("boost round trip and mass shell") {
  RngStream rng(17, 0, RngStream::kKinematics);
  for (int i = 0; i < 1000; ++i) {
    const FourVector v = proton(rng.uniform(-400, 400), rng.uniform(-400, 400),
                                rng.uniform(-400, 400));
    const std::array<double, 3> beta{rng.uniform(-0.4, 0.4),
                                     rng.uniform(-0.4, 0.4),
                                     rng.uniform(-0.4, 0.4)};
    const FourVector back = boost(boost(v, beta),
                                  {-beta[0], -beta[1], -beta[2]});
    CHECK(back.e == doctest::Approx(v.e).epsilon(1e-9));
    CHECK(back.px == doctest::Approx(v.px).epsilon(1e-9).scale(1.0));
    CHECK(back.py == doctest::Approx(v.py).epsilon(1e-9).scale(1.0));
    CHECK(back.pz == doctest::Approx(v.pz).epsilon(1e-9).scale(1.0));

    // Boosting never moves a particle off its mass shell.
    const FourVector b = boost(v, beta);
    CHECK(std::sqrt(invariant_mass_sq(b)) ==
          doctest::Approx(kProtonMassMeV).epsilon(1e-9));
  }
}

TEST_CASE("relative kinetic energy is frame invariant") {
  RngStream rng(23, 0, RngStream::kKinematics);
  for (int i = 0; i < 1000; ++i) {
    const FourVector p1 = proton(rng.uniform(-300, 300), rng.uniform(-300, 300),
                                 rng.uniform(100, 500));
    const FourVector p2 = proton(rng.uniform(-300, 300), rng.uniform(-300, 300),
                                 rng.uniform(100, 500));
    const double lab = relative_kinetic_energy(p1, p2);

    const PairCmFrame cm = boost_to_pair_cm(p1, p2);
    const double in_cm = relative_kinetic_energy(cm.p1, cm.p2);
    CHECK(std::fabs(lab - in_cm) < 1e-6);

    // In the pair frame the two momenta cancel.
    CHECK(cm.p1.px + cm.p2.px == doctest::Approx(0.0).scale(100.0));
    CHECK(cm.p1.py + cm.p2.py == doctest::Approx(0.0).scale(100.0));
    CHECK(cm.p1.pz + cm.p2.pz == doctest::Approx(0.0).scale(100.0));
  }
}

TEST_CASE("signal generator honours the channel peaks") {
  const int n = 100000;
  for (auto [ch, peak] : {std::pair{Channel::Hydrogen, 170.0},
                          std::pair{Channel::Carbon, 158.0}}) {
    const auto events = make_signal(ch, n, 31);
    double sum_t = 0.0, sum_eps = 0.0;
    for (const PairEvent& ev : events) {
      CHECK(std::sqrt(invariant_mass_sq(ev.p1)) ==
            doctest::Approx(kProtonMassMeV).epsilon(1e-6));
      CHECK(std::sqrt(invariant_mass_sq(ev.p2)) ==
            doctest::Approx(kProtonMassMeV).epsilon(1e-6));
      CHECK(in_momentum_window(GeneratorConfig{}, ev.p1));
      CHECK(in_momentum_window(GeneratorConfig{}, ev.p2));

      sum_t += kinetic_energy(ev.p1, kProtonMassMeV) +
               kinetic_energy(ev.p2, kProtonMassMeV);
      const double eps = relative_kinetic_energy(ev.p1, ev.p2);
      CHECK(eps >= 0.0);
      CHECK(eps < 0.8 + 1e-9);
      sum_eps += eps;
    }
    CHECK(std::fabs(sum_t / n - peak) < 0.02);
    // Relative kinetic energy is drawn uniformly below the generation cap.
    CHECK(std::fabs(sum_eps / n - 0.4) < 4 * 0.8 / std::sqrt(12.0 * n));

    const Histogram spectrum = energy_sum_spectrum(events, 1.0);
    CHECK(spectrum.total_in_range() == static_cast<std::uint64_t>(n));
    CHECK(spectrum.underflow() == 0);
    CHECK(spectrum.overflow() == 0);
    CHECK(spectrum.argmax_center() == doctest::Approx(peak));
  }
}

TEST_CASE("empty spectrum has zero counts everywhere") {
  const Histogram spectrum = energy_sum_spectrum({}, 2.0);
  CHECK(spectrum.total_in_range() == 0);
  CHECK_THROWS_AS(spectrum.argmax_center(), EmptySampleError);
}

TEST_CASE("selection cuts in order: window first, then relative energy") {
  GeneratorConfig cfg;
  SelectionReport report;

  PairEvent outside;
  outside.p1 = proton(0, 0, 300.0);  // below the window
  outside.p2 = proton(0, 0, -400.0); // huge relative energy too
  CHECK_FALSE(pass_selection(cfg, 1.0, outside, report));
  CHECK(report.fail_momentum_window == 1);
  CHECK(report.fail_relative_ke == 0);

  PairEvent wide;
  wide.p1 = proton(0, 0, 400.0);
  wide.p2 = proton(0, 0, -400.0);  // in window, far off back-to-back in energy
  CHECK_FALSE(pass_selection(cfg, 1.0, wide, report));
  CHECK(report.fail_relative_ke == 1);

  // A generated signal pair passes both cuts.
  const auto good = make_signal(Channel::Hydrogen, 1, 57).front();
  CHECK(pass_selection(cfg, 1.0, good, report));
  CHECK(report.n_selected == 1);
  CHECK(report.n_input == 3);

  // Cut 0 keeps nothing: the comparison is strict.
  SelectionReport zero;
  CHECK_FALSE(pass_selection(cfg, 0.0, good, zero));
  CHECK(zero.fail_relative_ke == 1);
}

TEST_CASE("selection is idempotent and the report balances") {
  GeneratorConfig cfg;
  cfg.background_cone_deg = 30.0;
  std::vector<PairEvent> mixed;
  for (int i = 0; i < 5000; ++i) {
    RngStream rng(71, static_cast<std::uint64_t>(i), RngStream::kKinematics);
    mixed.push_back(generate_background_event(
        cfg, static_cast<std::uint64_t>(i), rng));
  }
  for (const auto& ev : make_signal(Channel::Hydrogen, 5000, 72)) {
    mixed.push_back(ev);
  }

  SelectionReport report;
  const auto selected = select_pairs(mixed, cfg, 1.0, &report);
  CHECK(report.n_input == mixed.size());
  CHECK(report.n_input == report.fail_momentum_window +
                              report.fail_relative_ke + report.n_selected);
  CHECK(report.n_selected == selected.size());

  SelectionReport again;
  const auto twice = select_pairs(selected, cfg, 1.0, &again);
  CHECK(twice.size() == selected.size());
  CHECK(again.fail_momentum_window == 0);
  CHECK(again.fail_relative_ke == 0);
}

TEST_CASE("background pairs rarely mimic the two-proton decay") {
  GeneratorConfig cfg;
  const int n = 100000;
  int pass = 0;
  for (int i = 0; i < n; ++i) {
    RngStream rng(83, static_cast<std::uint64_t>(i), RngStream::kKinematics);
    const PairEvent ev =
        generate_background_event(cfg, static_cast<std::uint64_t>(i), rng);
    CHECK(in_momentum_window(cfg, ev.p1));
    CHECK(in_momentum_window(cfg, ev.p2));
    SelectionReport r;
    if (pass_selection(cfg, 1.0, ev, r)) ++pass;
  }
  const double frac = static_cast<double>(pass) / n;
  // Regression value for the default 30 degree cone.
  CHECK(std::fabs(frac - 0.0444) < 0.005);
  CHECK(frac < 0.10);
}

TEST_CASE("impossible momentum window exhausts the retry budget") {
  GeneratorConfig cfg;
  cfg.momentum_window_min_mevc = 465.0;
  cfg.momentum_window_max_mevc = 470.0;
  cfg.max_regenerations = 50;
  RngStream rng(5, 0, RngStream::kKinematics);
  std::uint64_t regen = 0;
  CHECK_THROWS_AS(
      generate_signal_event(cfg, Channel::Hydrogen, 0, rng, &regen),
      ConfigError);
  CHECK(regen >= 50);
}

TEST_CASE("generator config validation") {
  GeneratorConfig cfg;
  CHECK_NOTHROW(cfg.validate());

  GeneratorConfig bad = cfg;
  bad.momentum_window_min_mevc = 500.0;  // above the max
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  bad = cfg;
  bad.background_fraction = 1.5;
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  bad = cfg;
  bad.peak_sigma_mev = 0.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  bad = cfg;
  bad.relative_ke_max_gen_mev = -1.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  bad = cfg;
  bad.carbon_to_hydrogen_ratio = -0.1;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}
