#pragma once

#include <cstdint>
#include <string>

#include "pairsim/four_vector.hpp"
#include "pairsim/spin_models.hpp"

namespace pairsim {

// Physical origin of a detected pair. Hydrogen and Carbon are true entangled
// pairs from the two target species; Background is a quasi-free pair with no
// spin correlation; RandomPair is an accidental coincidence of protons from
// different beam bunches.
enum class Channel { Hydrogen, Carbon, Background, RandomPair };

const char* to_string(Channel c);
Channel channel_from_string(const std::string& s);

struct PairEvent {
  std::uint64_t event_id = 0;
  Channel channel = Channel::Hydrogen;
  FourVector p1, p2;       // lab-frame four-momenta, MeV
  double phi1_deg = -1.0;  // analyzer scattering azimuths
  double phi2_deg = -1.0;
  double theta1_deg = -1.0;  // analyzer polar angles
  double theta2_deg = -1.0;
  double t1_ns = 0.0;  // detector time stamps after TDC quantization
  double t2_ns = 0.0;
  // Truth-level bookkeeping, never used by the analysis path.
  HiddenState hidden;
  int bunch_offset = 0;  // beam buckets between the two protons
};

}  // namespace pairsim
