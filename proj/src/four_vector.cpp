#include "pairsim/four_vector.hpp"

#include <cmath>

#include "pairsim/errors.hpp"

namespace pairsim {

double three_momentum(const FourVector& v) {
  return std::sqrt(v.px * v.px + v.py * v.py + v.pz * v.pz);
}

double invariant_mass_sq(const FourVector& v) {
  return v.e * v.e - (v.px * v.px + v.py * v.py + v.pz * v.pz);
}

double kinetic_energy(const FourVector& v, double mass) { return v.e - mass; }

FourVector boost(const FourVector& v, const std::array<double, 3>& beta) {
  const double b2 = beta[0] * beta[0] + beta[1] * beta[1] + beta[2] * beta[2];
  if (b2 <= 0.0) return v;
  if (b2 >= 1.0) throw DataError("boost velocity is not physical (|beta| >= 1)");
  const double gamma = 1.0 / std::sqrt(1.0 - b2);
  const double bp = beta[0] * v.px + beta[1] * v.py + beta[2] * v.pz;
  // Spatial part: p' = p + [ (gamma-1) bp / b2 - gamma E ] beta
  const double coef = (gamma - 1.0) * bp / b2 - gamma * v.e;
  return {gamma * (v.e - bp),
          v.px + coef * beta[0],
          v.py + coef * beta[1],
          v.pz + coef * beta[2]};
}

PairCmFrame boost_to_pair_cm(const FourVector& p1, const FourVector& p2) {
  const FourVector tot = p1 + p2;
  const double m2 = invariant_mass_sq(tot);
  if (!(m2 > 0.0) || !(tot.e > 0.0)) {
    throw DataError("pair four-momentum is not timelike; cannot boost to rest frame");
  }
  PairCmFrame out;
  out.beta = {tot.px / tot.e, tot.py / tot.e, tot.pz / tot.e};
  out.p1 = boost(p1, out.beta);
  out.p2 = boost(p2, out.beta);
  return out;
}

double relative_kinetic_energy(const FourVector& p1, const FourVector& p2) {
  const FourVector tot = p1 + p2;
  const double s = invariant_mass_sq(tot);
  if (!(s > 0.0)) {
    throw DataError("pair four-momentum is not timelike; relative KE undefined");
  }
  const double m = kProtonMassMeV;
  return (s - 4.0 * m * m) / (std::sqrt(s) + 2.0 * m);
}

}  // namespace pairsim
