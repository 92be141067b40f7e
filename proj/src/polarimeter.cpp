#include "pairsim/polarimeter.hpp"

#include <cmath>

#include "pairsim/axis.hpp"
#include "pairsim/errors.hpp"

namespace pairsim {

void AnalyzerConfig::validate() const {
  if (!(analyzing_power > 0.0) || analyzing_power > 1.0) {
    throw ConfigError("analyzer_power must lie in (0, 1]");
  }
  if (coulomb_cut_deg < 0.0) {
    throw ConfigError("analyzer_coulomb_cut_deg must be non-negative");
  }
  if (!(band_min_deg < band_max_deg)) {
    throw ConfigError("analyzer_band_min_deg must be below analyzer_band_max_deg");
  }
  if (coulomb_cut_deg > band_min_deg) {
    throw ConfigError("analyzer_coulomb_cut_deg must not exceed analyzer_band_min_deg");
  }
  if (coulomb_fraction < 0.0 || coulomb_fraction > 1.0) {
    throw ConfigError("analyzer_coulomb_fraction must lie in [0, 1]");
  }
}

namespace {

double response(ResponsePreset preset, double arg_rad) {
  if (preset == ResponsePreset::Sign) {
    return std::cos(arg_rad) >= 0.0 ? 1.0 : -1.0;
  }
  return std::cos(arg_rad);
}

// Azimuth for a single polarized track, density (1 + sign*A*g(phi-azm))/2pi.
double sample_polarized_phi(double azimuth_deg, double sign, double a,
                            ResponsePreset preset, RngStream& rng) {
  const double azm = deg_to_rad(azimuth_deg);
  for (;;) {
    const double phi = rng.uniform(0.0, 2.0 * M_PI);
    const double density = 1.0 + sign * a * response(preset, phi - azm);
    if (rng.uniform(0.0, 1.0 + a) < density) return rad_to_deg(phi);
  }
}

struct PhiPair {
  double phi1_deg, phi2_deg;
};

PhiPair sample_azimuths(const AnalyzerConfig& cfg, const SourceModel& model,
                        const HiddenState& hidden, RngStream& rng) {
  const double a = cfg.analyzing_power;
  switch (model.kind) {
    case SourceKind::QuantumSinglet: {
      if (hidden.kind != HiddenState::Kind::Entangled) {
        throw DataError("quantum_singlet event carries a non-entangled hidden state");
      }
      // Joint density (1 - A^2 cos(phi1-phi2)) / 4pi^2, bound 1 + A^2.
      for (;;) {
        const double phi1 = rng.uniform(0.0, 2.0 * M_PI);
        const double phi2 = rng.uniform(0.0, 2.0 * M_PI);
        const double density = 1.0 - a * a * std::cos(phi1 - phi2);
        if (rng.uniform(0.0, 1.0 + a * a) < density) {
          return {rad_to_deg(phi1), rad_to_deg(phi2)};
        }
      }
    }
    case SourceKind::LhvVector:
    case SourceKind::LhvDeterministic: {
      if (hidden.kind != HiddenState::Kind::PolarizationAzimuth ||
          hidden.azimuth_deg < 0.0) {
        throw DataError("hidden-variable event is missing its polarization azimuth");
      }
      const ResponsePreset preset = model.kind == SourceKind::LhvVector
                                        ? ResponsePreset::Cosine
                                        : model.response;
      const double phi1 =
          sample_polarized_phi(hidden.azimuth_deg, +1.0, a, preset, rng);
      const double phi2 =
          sample_polarized_phi(hidden.azimuth_deg, -1.0, a, preset, rng);
      return {phi1, phi2};
    }
    case SourceKind::UnpolarizedBackground: {
      if (hidden.kind != HiddenState::Kind::Unpolarized) {
        throw DataError("unpolarized event carries a hidden polarization state");
      }
      const double phi1 = rng.uniform(0.0, 360.0);
      const double phi2 = rng.uniform(0.0, 360.0);
      return {phi1, phi2};
    }
  }
  throw ConfigError("unknown source kind");
}

}  // namespace

ScatterPair sample_scatter(const AnalyzerConfig& cfg, const SourceModel& model,
                           const HiddenState& hidden, RngStream& rng) {
  const PhiPair phis = sample_azimuths(cfg, model, hidden, rng);

  ScatterPair out;
  out.s1.phi_deg = phis.phi1_deg;
  out.s2.phi_deg = phis.phi2_deg;

  for (ScatterAngles* track : {&out.s1, &out.s2}) {
    const bool coulomb = rng.uniform() < cfg.coulomb_fraction;
    if (coulomb) {
      track->theta_deg = rng.uniform(0.0, cfg.coulomb_cut_deg);
      // Coulomb scattering is spin-blind; the azimuth loses its modulation.
      track->phi_deg = rng.uniform(0.0, 360.0);
    } else {
      track->theta_deg = rng.uniform(cfg.band_min_deg, cfg.band_max_deg);
    }
  }
  return out;
}

Acceptance accept_scatter(const AnalyzerConfig& cfg, const ScatterPair& pair) {
  Acceptance out;
  using Reason = Acceptance::Reason;
  if (pair.s1.theta_deg < cfg.band_min_deg) {
    out.reason = Reason::Track1BelowBand;
  } else if (pair.s1.theta_deg > cfg.band_max_deg) {
    out.reason = Reason::Track1AboveBand;
  } else if (pair.s2.theta_deg < cfg.band_min_deg) {
    out.reason = Reason::Track2BelowBand;
  } else if (pair.s2.theta_deg > cfg.band_max_deg) {
    out.reason = Reason::Track2AboveBand;
  } else {
    out.accepted = true;
  }
  return out;
}

}  // namespace pairsim
