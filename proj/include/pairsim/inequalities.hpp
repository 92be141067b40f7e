#pragma once

#include <array>
#include <string>

#include "pairsim/estimators.hpp"
#include "pairsim/spin_models.hpp"

namespace pairsim {

// One CHSH test case: |E(a,b) - E(a,b') + E(a',b) + E(a',b')| <= 2 for any
// local hidden-variable model. The eight shipped cases step the base
// separation delta from 25 to 60 degrees with axes (0, delta, 2delta,
// 3delta), which brackets the maximal quantum violation near 45.
struct BellCase {
  int id = 0;
  double a_deg = 0.0, b_deg = 0.0, a2_deg = 0.0, b2_deg = 0.0;
  double qm_prediction = 0.0;  // closed-form singlet value, rounded to 0.005
  // Published measurement shipped as overlay metadata, not used by any fit.
  double experiment = 0.0, experiment_sigma = 0.0;

  static constexpr double kLimit = 2.0;
};

// One Wigner test case: P(a,c) - P(a,b) - P(b,c) <= 0 with b bisecting a and
// c, where P is the same-direction probability sin^2(theta/2) for the
// singlet. Cases step the outer separation from 30 to 180 degrees.
struct WignerCase {
  int id = 0;
  double a_deg = 0.0, b_deg = 0.0, c_deg = 0.0;
  double experiment = 0.0, experiment_sigma = 0.0;

  static constexpr double kLimit = 0.0;
};

const std::array<BellCase, 8>& bell_cases();
const std::array<WignerCase, 6>& wigner_cases();
const BellCase& bell_case(int id);      // ConfigError when id is not 1..8
const WignerCase& wigner_case(int id);  // ConfigError when id is not 1..6

enum class Verdict { ViolatesClassical, Consistent, Inconclusive };
const char* to_string(Verdict v);

struct InequalityResult {
  int case_id = 0;
  double measured = 0.0;
  double sigma = 0.0;
  double prediction_qm = 0.0;
  double classical_limit = 0.0;
  Verdict verdict = Verdict::Inconclusive;
};

// Less than 2 sigma from the limit is Inconclusive; beyond that the side
// decides. For the Bell sum "violates" means above 2, for the Wigner
// combination above 0.
Verdict classify_verdict(double measured, double sigma, double limit);

// measured = |E(a,b) - E(a,b') + E(a',b) + E(a',b')|, errors in quadrature.
// The estimates must carry the case's axes (checked, DataError).
InequalityResult evaluate_bell(const BellCase& c, const CorrelationEstimate& ab,
                               const CorrelationEstimate& ab2,
                               const CorrelationEstimate& a2b,
                               const CorrelationEstimate& a2b2);

// Same-direction probability from a calibrated correlation estimate:
// P = (1 + E)/2.
struct ProbabilityEstimate {
  double p = 0.0;
  double sigma = 0.0;
};
ProbabilityEstimate wigner_probability(const CorrelationEstimate& est);

InequalityResult evaluate_wigner(const WignerCase& c,
                                 const ProbabilityEstimate& ac,
                                 const ProbabilityEstimate& ab,
                                 const ProbabilityEstimate& bc);

// Closed-form predictions for a source model, used for the bound sweeps and
// the reference tables.
double bell_sum_prediction(const SourceModel& model, const BellCase& c);
double wigner_combination_prediction(const SourceModel& model,
                                     const WignerCase& c);
// Singlet prediction sin^2(t/2) - 2 sin^2(t/4) for outer separation t.
double wigner_prediction_qm(double theta_ac_deg);

}  // namespace pairsim
