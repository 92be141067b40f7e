#include "pairsim/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pairsim/axis.hpp"
#include "pairsim/errors.hpp"

namespace pairsim {

void GeneratorConfig::validate() const {
  if (!(peak_sum_h_mev > 0.0) || !(peak_sum_c_mev > 0.0)) {
    throw ConfigError("channel peaks must be positive");
  }
  if (!(peak_sigma_mev > 0.0)) {
    throw ConfigError("peak_sigma_mev must be positive");
  }
  if (!(relative_ke_max_gen_mev > 0.0)) {
    throw ConfigError("relative_ke_max_gen_mev must be positive");
  }
  if (background_fraction < 0.0 || background_fraction > 1.0) {
    throw ConfigError("background_fraction must lie in [0, 1]");
  }
  if (carbon_to_hydrogen_ratio < 0.0) {
    throw ConfigError("carbon_to_hydrogen_ratio must be non-negative");
  }
  if (!(momentum_window_min_mevc >= 0.0) ||
      !(momentum_window_min_mevc < momentum_window_max_mevc)) {
    throw ConfigError("momentum window is empty or negative");
  }
  if (!(background_cone_deg > 0.0) || background_cone_deg > 180.0) {
    throw ConfigError("background_cone_deg must lie in (0, 180]");
  }
  if (max_regenerations < 0) {
    throw ConfigError("max_regenerations must be non-negative");
  }
}

bool in_momentum_window(const GeneratorConfig& cfg, const FourVector& track) {
  const double p = three_momentum(track);
  return p >= cfg.momentum_window_min_mevc && p <= cfg.momentum_window_max_mevc;
}

namespace {

FourVector proton_from(double p_mevc, double cos_theta, double phi_rad) {
  const double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
  return {std::sqrt(p_mevc * p_mevc + kProtonMassMeV * kProtonMassMeV),
          p_mevc * sin_theta * std::cos(phi_rad),
          p_mevc * sin_theta * std::sin(phi_rad), p_mevc * cos_theta};
}

}  // namespace

PairEvent generate_signal_event(const GeneratorConfig& cfg, Channel channel,
                                std::uint64_t event_id, RngStream& rng,
                                std::uint64_t* regenerations) {
  const double peak =
      channel == Channel::Carbon ? cfg.peak_sum_c_mev : cfg.peak_sum_h_mev;
  const double m = kProtonMassMeV;

  for (int attempt = 0; attempt <= cfg.max_regenerations; ++attempt) {
    const double t_sum = rng.gaussian(peak, cfg.peak_sigma_mev);
    const double eps = rng.uniform(0.0, cfg.relative_ke_max_gen_mev);
    const double cos_star = rng.uniform(-1.0, 1.0);
    const double phi_star = rng.uniform(0.0, 2.0 * M_PI);

    const double pair_mass = 2.0 * m + eps;
    const double e_tot = t_sum + 2.0 * m;
    if (e_tot <= pair_mass) {
      if (regenerations) ++*regenerations;
      continue;
    }

    // Decay in the pair frame, then boost along +z to the lab.
    const double e_star = pair_mass / 2.0;
    const double p_star = std::sqrt(e_star * e_star - m * m);
    const FourVector cm1 = {e_star, p_star * std::sqrt(1.0 - cos_star * cos_star) *
                                        std::cos(phi_star),
                            p_star * std::sqrt(1.0 - cos_star * cos_star) *
                                std::sin(phi_star),
                            p_star * cos_star};
    const FourVector cm2 = {e_star, -cm1.px, -cm1.py, -cm1.pz};

    const double beta_z = std::sqrt(e_tot * e_tot - pair_mass * pair_mass) / e_tot;
    const std::array<double, 3> to_lab = {0.0, 0.0, -beta_z};
    PairEvent ev;
    ev.event_id = event_id;
    ev.channel = channel;
    ev.p1 = boost(cm1, to_lab);
    ev.p2 = boost(cm2, to_lab);
    if (in_momentum_window(cfg, ev.p1) && in_momentum_window(cfg, ev.p2)) {
      return ev;
    }
    if (regenerations) ++*regenerations;
  }
  throw ConfigError(
      "momentum window rejected " + std::to_string(cfg.max_regenerations + 1) +
      " consecutive kinematic draws; the generator settings cannot populate "
      "the window");
}

PairEvent generate_background_event(const GeneratorConfig& cfg,
                                    std::uint64_t event_id, RngStream& rng) {
  const double cos_min = std::cos(deg_to_rad(cfg.background_cone_deg));
  PairEvent ev;
  ev.event_id = event_id;
  ev.channel = Channel::Background;
  for (FourVector* track : {&ev.p1, &ev.p2}) {
    const double p = rng.uniform(cfg.momentum_window_min_mevc,
                                 cfg.momentum_window_max_mevc);
    const double cos_theta = rng.uniform(cos_min, 1.0);
    const double phi = rng.uniform(0.0, 2.0 * M_PI);
    *track = proton_from(p, cos_theta, phi);
  }
  return ev;
}

void SelectionReport::merge(const SelectionReport& o) {
  n_input += o.n_input;
  fail_momentum_window += o.fail_momentum_window;
  fail_relative_ke += o.fail_relative_ke;
  n_selected += o.n_selected;
}

bool pass_selection(const GeneratorConfig& cfg, double cut_mev,
                    const PairEvent& ev, SelectionReport& report) {
  ++report.n_input;
  if (!in_momentum_window(cfg, ev.p1) || !in_momentum_window(cfg, ev.p2)) {
    ++report.fail_momentum_window;
    return false;
  }
  if (!(relative_kinetic_energy(ev.p1, ev.p2) < cut_mev)) {
    ++report.fail_relative_ke;
    return false;
  }
  ++report.n_selected;
  return true;
}

std::vector<PairEvent> select_pairs(std::span<const PairEvent> events,
                                    const GeneratorConfig& cfg, double cut_mev,
                                    SelectionReport* report) {
  SelectionReport local;
  std::vector<PairEvent> kept;
  kept.reserve(events.size());
  for (const PairEvent& ev : events) {
    if (pass_selection(cfg, cut_mev, ev, local)) kept.push_back(ev);
  }
  if (report) *report = local;
  return kept;
}

Histogram energy_sum_spectrum(std::span<const PairEvent> events,
                              double bin_width_mev) {
  if (events.empty()) return Histogram(0.0, 0.0, bin_width_mev);

  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (const PairEvent& ev : events) {
    const double sum = kinetic_energy(ev.p1, kProtonMassMeV) +
                       kinetic_energy(ev.p2, kProtonMassMeV);
    lo = first ? sum : std::min(lo, sum);
    hi = first ? sum : std::max(hi, sum);
    first = false;
  }
  Histogram h(lo - bin_width_mev / 2.0, hi + bin_width_mev / 2.0,
              bin_width_mev);
  for (const PairEvent& ev : events) {
    h.fill(kinetic_energy(ev.p1, kProtonMassMeV) +
           kinetic_energy(ev.p2, kProtonMassMeV));
  }
  return h;
}

}  // namespace pairsim
