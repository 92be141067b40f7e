#pragma once

#include <cstdint>
#include <vector>

#include "pairsim/config.hpp"
#include "pairsim/event.hpp"

namespace pairsim {

// Events are produced and analyzed in fixed chunks of this many event ids.
// Chunk boundaries, not thread boundaries, define the floating-point merge
// order, so any worker count reproduces the same bytes.
inline constexpr std::uint64_t kChunkEvents = 16384;

struct GenerationReport {
  std::uint64_t n_events = 0;
  std::uint64_t n_hydrogen = 0;
  std::uint64_t n_carbon = 0;
  std::uint64_t n_background = 0;
  std::uint64_t n_random = 0;
  std::uint64_t regenerations = 0;
  std::uint64_t seed = 0;

  void merge(const GenerationReport& o);
};

// Produce the event with this id. Every random draw comes from counter-based
// streams keyed by (seed, event_id, stage), so events are independent of
// generation order. Channel composition: random_pair_fraction of accidentals,
// then background_fraction, then carbon vs hydrogen by the target ratio.
PairEvent make_event(const RunConfig& cfg, std::uint64_t event_id,
                     GenerationReport& report);

// Fill events[0..n) for ids [first_id, first_id + n). Serial reference.
void generate_chunk(const RunConfig& cfg, std::uint64_t first_id,
                    std::uint64_t n, PairEvent* events,
                    GenerationReport& report);

std::vector<PairEvent> generate_events_serial(const RunConfig& cfg,
                                              GenerationReport* report);

// OpenMP over chunks; bit-identical to the serial path for any thread count.
std::vector<PairEvent> generate_events(const RunConfig& cfg, int n_threads,
                                       GenerationReport* report);

}  // namespace pairsim
