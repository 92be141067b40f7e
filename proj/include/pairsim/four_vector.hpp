#pragma once

#include <array>

namespace pairsim {

constexpr double kProtonMassMeV = 938.272;

struct FourVector {
  double e = 0.0, px = 0.0, py = 0.0, pz = 0.0;
};

inline FourVector operator+(const FourVector& a, const FourVector& b) {
  return {a.e + b.e, a.px + b.px, a.py + b.py, a.pz + b.pz};
}

double three_momentum(const FourVector& v);
double invariant_mass_sq(const FourVector& v);  // e^2 - |p|^2
double kinetic_energy(const FourVector& v, double mass);

// Boost into the frame moving with velocity beta (units of c) relative to the
// current frame: a particle at rest in the new frame has lab velocity +beta.
FourVector boost(const FourVector& v, const std::array<double, 3>& beta);

struct PairCmFrame {
  FourVector p1, p2;             // tracks in the pair rest frame
  std::array<double, 3> beta{};  // velocity of the pair in the input frame
};

// Boost both tracks into their common rest frame. Throws DataError if the
// summed four-vector is not timelike.
PairCmFrame boost_to_pair_cm(const FourVector& p1, const FourVector& p2);

// Relative kinetic energy sqrt(s) - 2 m_p, evaluated through the invariant so
// any frame gives the same answer; computed as (s - 4 m^2)/(sqrt(s) + 2 m) to
// avoid the cancellation at small values.
double relative_kinetic_energy(const FourVector& p1, const FourVector& p2);

}  // namespace pairsim
