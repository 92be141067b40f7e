#include "pairsim/spin_models.hpp"

#include <cmath>

#include "pairsim/axis.hpp"
#include "pairsim/errors.hpp"

namespace pairsim {

std::string to_string(SourceKind k) {
  switch (k) {
    case SourceKind::QuantumSinglet: return "quantum_singlet";
    case SourceKind::LhvVector: return "lhv_vector";
    case SourceKind::LhvDeterministic: return "lhv_deterministic";
    case SourceKind::UnpolarizedBackground: return "unpolarized_background";
  }
  throw ConfigError("unknown source kind");
}

SourceKind source_kind_from_string(const std::string& s) {
  if (s == "quantum_singlet") return SourceKind::QuantumSinglet;
  if (s == "lhv_vector") return SourceKind::LhvVector;
  if (s == "lhv_deterministic") return SourceKind::LhvDeterministic;
  if (s == "unpolarized_background") return SourceKind::UnpolarizedBackground;
  throw ConfigError("unknown source model '" + s + "'");
}

double qm_expectation(double theta_deg) {
  return -std::cos(deg_to_rad(axis_separation_deg(theta_deg, 0.0)));
}

double qm_joint_probability(double theta_deg, int s1, int s2) {
  if ((s1 != 1 && s1 != -1) || (s2 != 1 && s2 != -1)) {
    throw ConfigError("outcomes must be +1 or -1");
  }
  const double c = std::cos(deg_to_rad(axis_separation_deg(theta_deg, 0.0)));
  return (s1 == s2) ? (1.0 - c) / 4.0 : (1.0 + c) / 4.0;
}

double qm_wigner_probability(double theta_deg) {
  const double h = deg_to_rad(axis_separation_deg(theta_deg, 0.0)) / 2.0;
  const double s = std::sin(h);
  return s * s;
}

double lhv_deterministic_expectation(double theta_deg) {
  return -1.0 + axis_separation_deg(theta_deg, 0.0) / 90.0;
}

double lhv_vector_expectation(double theta_deg) {
  return -0.5 * std::cos(deg_to_rad(axis_separation_deg(theta_deg, 0.0)));
}

double lhv_deterministic_analyzed_expectation(double theta_deg) {
  const double t = deg_to_rad(axis_separation_deg(theta_deg, 0.0));
  return -M_PI * M_PI / 12.0 + t * t / 2.0 - t * t * t / (3.0 * M_PI);
}

double analyzed_expectation(const SourceModel& model, double theta_deg) {
  switch (model.kind) {
    case SourceKind::QuantumSinglet:
      return qm_expectation(theta_deg);
    case SourceKind::LhvVector:
      return lhv_vector_expectation(theta_deg);
    case SourceKind::LhvDeterministic:
      return model.response == ResponsePreset::Cosine
                 ? lhv_vector_expectation(theta_deg)
                 : lhv_deterministic_analyzed_expectation(theta_deg);
    case SourceKind::UnpolarizedBackground:
      return 0.0;
  }
  throw ConfigError("unknown source kind");
}

double model_expectation(const SourceModel& model, double theta_deg) {
  switch (model.kind) {
    case SourceKind::QuantumSinglet:
      return qm_expectation(theta_deg);
    case SourceKind::LhvVector:
      return lhv_vector_expectation(theta_deg);
    case SourceKind::LhvDeterministic:
      return model.response == ResponsePreset::Cosine
                 ? lhv_vector_expectation(theta_deg)
                 : lhv_deterministic_expectation(theta_deg);
    case SourceKind::UnpolarizedBackground:
      return 0.0;
  }
  throw ConfigError("unknown source kind");
}

HiddenState sample_hidden_state(const SourceModel& model, RngStream& rng) {
  switch (model.kind) {
    case SourceKind::QuantumSinglet:
      return {HiddenState::Kind::Entangled, -1.0};
    case SourceKind::LhvVector:
    case SourceKind::LhvDeterministic:
      return {HiddenState::Kind::PolarizationAzimuth, rng.uniform(0.0, 360.0)};
    case SourceKind::UnpolarizedBackground:
      return {HiddenState::Kind::Unpolarized, -1.0};
  }
  throw ConfigError("unknown source kind");
}

namespace {
int sign_outcome(double lambda_deg, double axis_deg) {
  return classify_outcome(lambda_deg, axis_deg);  // sgn cos(lambda - axis)
}
}  // namespace

std::pair<int, int> sample_direct_outcomes(const SourceModel& model,
                                           const HiddenState& hidden,
                                           double a_deg, double b_deg,
                                           RngStream& rng) {
  switch (model.kind) {
    case SourceKind::QuantumSinglet: {
      // Marginals are 1/2; the partner is equal with probability (1-cos)/2.
      const int s1 = rng.uniform() < 0.5 ? +1 : -1;
      const double theta = axis_separation_deg(a_deg, b_deg);
      const double p_equal = (1.0 - std::cos(deg_to_rad(theta))) / 2.0;
      const int s2 = rng.uniform() < p_equal ? s1 : -s1;
      return {s1, s2};
    }
    case SourceKind::LhvDeterministic: {
      if (model.response != ResponsePreset::Sign) {
        throw DataError("direct outcomes are defined for the Sign preset only");
      }
      if (hidden.kind != HiddenState::Kind::PolarizationAzimuth) {
        throw DataError("deterministic model requires a hidden azimuth");
      }
      return {sign_outcome(hidden.azimuth_deg, a_deg),
              -sign_outcome(hidden.azimuth_deg, b_deg)};
    }
    default:
      throw DataError("no direct outcome rule for this source model");
  }
}

}  // namespace pairsim
