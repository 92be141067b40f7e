#pragma once

#include <string>
#include <utility>

#include "pairsim/rng.hpp"

namespace pairsim {

enum class SourceKind {
  QuantumSinglet,
  LhvVector,
  LhvDeterministic,
  UnpolarizedBackground,
};

// Azimuthal response shape g(x) of the deterministic hidden-parameter model:
// Sign is the square-wave rule the closed-form oracle describes; Cosine
// reduces the model to LhvVector.
enum class ResponsePreset { Sign, Cosine };

struct SourceModel {
  SourceKind kind = SourceKind::QuantumSinglet;
  ResponsePreset response = ResponsePreset::Sign;
};

std::string to_string(SourceKind k);
SourceKind source_kind_from_string(const std::string& s);

// Singlet-state correlation of transverse spin projections at axis
// separation theta: E(theta) = -cos(theta).
double qm_expectation(double theta_deg);

// Joint probability of the four +-1 outcome pairs at separation theta.
// Equal signs carry (1 - cos)/4 each, opposite signs (1 + cos)/4 each.
double qm_joint_probability(double theta_deg, int s1, int s2);

// P(++) + P(--) = sin^2(theta/2); the correlated-pair probability entering
// the set-theoretic inequality.
double qm_wigner_probability(double theta_deg);

// Deterministic hidden-parameter model, outcomes s1 = sgn cos(lambda - a),
// s2 = -sgn cos(lambda - b), lambda uniform: E(theta) = -1 + theta/90.
double lhv_deterministic_expectation(double theta_deg);

// Hidden polarization-vector model (anti-parallel pair, uniform azimuth) as
// seen through the calibrated analyzer: E(theta) = -cos(theta)/2.
double lhv_vector_expectation(double theta_deg);

// What the calibrated analyzer chain reports for the Sign preset. The 2/pi
// calibration is exact for first-harmonic (cosine) responses, but a square
// wave carries odd harmonics that dilute as 1/k^4 rather than 1/k^2; summing
// the series gives the cubic below (theta in radians, valid on [0, pi]):
//   E(t) = -pi^2/12 + t^2/2 - t^3/(3 pi)
// This is the curve a pipeline run reproduces; the direct-outcome law stays
// -1 + theta/90.
double lhv_deterministic_analyzed_expectation(double theta_deg);

// Model expectation as reproduced by a full simulate+analyze pass.
double analyzed_expectation(const SourceModel& model, double theta_deg);

// The model's own outcome law, independent of any analyzer effects. For the
// Sign-preset deterministic model this is -1 + theta/90, which obeys the
// classical bounds; the analyzed curve above it does not, because the 2/pi
// calibration overcorrects a square-wave response.
double model_expectation(const SourceModel& model, double theta_deg);

struct HiddenState {
  enum class Kind { Entangled, PolarizationAzimuth, Unpolarized };
  Kind kind = Kind::Unpolarized;
  double azimuth_deg = -1.0;  // sentinel when no azimuth applies
};

HiddenState sample_hidden_state(const SourceModel& model, RngStream& rng);

// Reference Monte Carlo without the polarimeter: draw the model's own +-1
// outcomes against axes a and b. Supported for QuantumSinglet and for
// LhvDeterministic with the Sign preset (the models whose outcome rules are
// closed-form); used by the inequality-bound checks.
std::pair<int, int> sample_direct_outcomes(const SourceModel& model,
                                           const HiddenState& hidden,
                                           double a_deg, double b_deg,
                                           RngStream& rng);

}  // namespace pairsim
