#pragma once

#include "pairsim/rng.hpp"
#include "pairsim/spin_models.hpp"

namespace pairsim {

// Graphite-analyzer description. Spin information sits in the azimuthal
// modulation of the second scattering; the polar angle only decides whether a
// scatter is usable (nuclear band) or Coulomb-dominated (spike near 0).
struct AnalyzerConfig {
  double analyzing_power = 0.25;  // effective A over the accepted band
  double coulomb_cut_deg = 3.0;   // below this the scattering is Coulomb
  double band_min_deg = 5.0;
  double band_max_deg = 20.0;
  double coulomb_fraction = 0.5;  // fraction of scatters landing in the spike

  void validate() const;
};

struct ScatterAngles {
  double theta_deg = 0.0;
  double phi_deg = 0.0;
};

struct ScatterPair {
  ScatterAngles s1, s2;
};

// Draw the double-scattering angles for one pair. Azimuths follow the source
// model's joint density:
//   QuantumSinglet:   f(p1,p2) = (1 - A^2 cos(p1-p2)) / 4pi^2
//   LhvVector:        f(p|azm) = (1 + A cos(p-azm))/2pi, partner sign-flipped
//   LhvDeterministic: same with cos replaced by the response preset g
//   Unpolarized:      uniform
// Coulomb scatters carry no spin information, so a track that lands in the
// spike gets a uniform azimuth regardless of the model.
// Throws DataError when the hidden state does not match the model.
ScatterPair sample_scatter(const AnalyzerConfig& cfg, const SourceModel& model,
                           const HiddenState& hidden, RngStream& rng);

struct Acceptance {
  enum class Reason {
    Accepted,
    Track1BelowBand,
    Track1AboveBand,
    Track2BelowBand,
    Track2AboveBand,
  };
  bool accepted = false;
  Reason reason = Reason::Accepted;
};

// Both polar angles must lie in [band_min, band_max], bounds inclusive.
Acceptance accept_scatter(const AnalyzerConfig& cfg, const ScatterPair& pair);

}  // namespace pairsim
