#pragma once

#include <cmath>
#include <cstdint>

namespace pairsim {

// Counter-based random streams. Every (seed, event_id, stream) triple names an
// independent sequence, so events can be produced in any order, on any number
// of threads, with bit-identical results. The generator is splitmix64; the
// stream key is folded into the initial state with two extra mixing rounds.
class RngStream {
 public:
  // Stream tags keep the draws of the different simulation stages decoupled:
  // adding a draw in one stage never perturbs another stage's sequence.
  enum Stream : std::uint64_t {
    kChannel = 0x11,
    kKinematics = 0x22,
    kHidden = 0x33,
    kScatter = 0x44,
    kTiming = 0x55,
    kBootstrap = 0x66,
  };

  RngStream(std::uint64_t seed, std::uint64_t event_id, std::uint64_t stream)
      : state_(mix(mix(mix(seed + kGolden) ^ event_id) ^ stream)) {}

  std::uint64_t next_u64() {
    state_ += kGolden;
    return mix(state_);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Box-Muller; one value per call so the stream layout stays simple.
  double gaussian(double mean, double sigma) {
    double u1 = 1.0 - uniform();  // (0, 1]
    double u2 = uniform();
    return mean + sigma * std::sqrt(-2.0 * std::log(u1)) *
                      std::cos(2.0 * M_PI * u2);
  }

  // Uniform integer in [0, n), n >= 1. Lemire reduction, no rejection loop.
  std::uint64_t uniform_int(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t state_;
};

}  // namespace pairsim
