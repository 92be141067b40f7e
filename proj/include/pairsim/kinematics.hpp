#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pairsim/event.hpp"
#include "pairsim/histogram.hpp"
#include "pairsim/rng.hpp"

namespace pairsim {

struct GeneratorConfig {
  double beam_energy_mev = 170.0;  // recorded with the run, not used directly
  double peak_sum_h_mev = 170.0;   // summed kinetic energy, hydrogen channel
  double peak_sum_c_mev = 158.0;   // carbon channel
  double peak_sigma_mev = 1.0;
  double relative_ke_max_gen_mev = 0.8;
  double background_fraction = 0.0;
  double carbon_to_hydrogen_ratio = 0.0;
  // Spectrometer momentum acceptance. Two protons sharing ~170 MeV of
  // kinetic energy back to back carry ~380-430 MeV/c each, so the window
  // brackets that range.
  double momentum_window_min_mevc = 350.0;
  double momentum_window_max_mevc = 470.0;
  double background_cone_deg = 30.0;  // forward half-angle of uncorrelated pairs
  int max_regenerations = 1000;       // per-event retry budget for the window

  void validate() const;
};

// Entangled-pair kinematics: summed kinetic energy gaussian at the channel
// peak, relative kinetic energy uniform below relative_ke_max_gen_mev,
// isotropic decay in the pair frame, pair boosted along +z. Tracks must land
// in the momentum window; failures redraw everything and are counted in
// *regenerations. Exhausting the retry budget throws ConfigError.
PairEvent generate_signal_event(const GeneratorConfig& cfg, Channel channel,
                                std::uint64_t event_id, RngStream& rng,
                                std::uint64_t* regenerations);

// Two uncorrelated protons: momenta uniform in the window, directions
// uniform in solid angle inside the forward cone.
PairEvent generate_background_event(const GeneratorConfig& cfg,
                                    std::uint64_t event_id, RngStream& rng);

bool in_momentum_window(const GeneratorConfig& cfg, const FourVector& track);

struct SelectionReport {
  std::uint64_t n_input = 0;
  std::uint64_t fail_momentum_window = 0;
  std::uint64_t fail_relative_ke = 0;
  std::uint64_t n_selected = 0;

  void merge(const SelectionReport& o);
};

// Momentum window on both tracks first, then relative kinetic energy below
// cut_mev. Strict < on the cut, so cut 0 keeps nothing.
bool pass_selection(const GeneratorConfig& cfg, double cut_mev,
                    const PairEvent& ev, SelectionReport& report);

std::vector<PairEvent> select_pairs(std::span<const PairEvent> events,
                                    const GeneratorConfig& cfg, double cut_mev,
                                    SelectionReport* report);

// Histogram of T1 + T2 with bin centers on multiples of the width; range
// spans the data so every event lands in a bin.
Histogram energy_sum_spectrum(std::span<const PairEvent> events,
                              double bin_width_mev);

}  // namespace pairsim
