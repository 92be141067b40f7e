#include "pairsim/simulate.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <exception>

#include "pairsim/errors.hpp"
#include "pairsim/polarimeter.hpp"
#include "pairsim/timing.hpp"

namespace pairsim {

void GenerationReport::merge(const GenerationReport& o) {
  n_events += o.n_events;
  n_hydrogen += o.n_hydrogen;
  n_carbon += o.n_carbon;
  n_background += o.n_background;
  n_random += o.n_random;
  regenerations += o.regenerations;
}

namespace {

Channel draw_single_channel(const GeneratorConfig& gen, RngStream& rng) {
  if (rng.uniform() < gen.background_fraction) return Channel::Background;
  const double r = gen.carbon_to_hydrogen_ratio;
  if (rng.uniform() < r / (1.0 + r)) return Channel::Carbon;
  return Channel::Hydrogen;
}

FourVector single_track(const RunConfig& cfg, std::uint64_t event_id,
                        RngStream& ch_rng, RngStream& kin_rng, bool first,
                        GenerationReport& report) {
  const Channel c = draw_single_channel(cfg.generator, ch_rng);
  if (c == Channel::Background) {
    const PairEvent ev =
        generate_background_event(cfg.generator, event_id, kin_rng);
    return first ? ev.p1 : ev.p2;
  }
  const PairEvent ev = generate_signal_event(cfg.generator, c, event_id,
                                             kin_rng, &report.regenerations);
  return first ? ev.p1 : ev.p2;
}

}  // namespace

PairEvent make_event(const RunConfig& cfg, std::uint64_t event_id,
                     GenerationReport& report) {
  RngStream ch_rng(cfg.seed, event_id, RngStream::kChannel);
  RngStream kin_rng(cfg.seed, event_id, RngStream::kKinematics);

  PairEvent ev;
  const bool accidental = ch_rng.uniform() < cfg.timing.random_pair_fraction;
  if (accidental) {
    // Two protons from unrelated reactions: each track samples the singles
    // flux that the configured composition produces.
    ev.p1 = single_track(cfg, event_id, ch_rng, kin_rng, true, report);
    ev.p2 = single_track(cfg, event_id, ch_rng, kin_rng, false, report);
    ev.event_id = event_id;
    ev.channel = Channel::RandomPair;
    ++report.n_random;
  } else {
    const Channel c = draw_single_channel(cfg.generator, ch_rng);
    if (c == Channel::Background) {
      ev = generate_background_event(cfg.generator, event_id, kin_rng);
      ++report.n_background;
    } else {
      ev = generate_signal_event(cfg.generator, c, event_id, kin_rng,
                                 &report.regenerations);
      if (c == Channel::Carbon) {
        ++report.n_carbon;
      } else {
        ++report.n_hydrogen;
      }
    }
  }

  // Spin correlations exist only within a genuine entangled pair; quasi-free
  // and accidental pairs scatter with no azimuthal preference.
  const bool correlated =
      ev.channel == Channel::Hydrogen || ev.channel == Channel::Carbon;
  const SourceModel effective =
      correlated ? cfg.source
                 : SourceModel{SourceKind::UnpolarizedBackground,
                               cfg.source.response};

  RngStream hid_rng(cfg.seed, event_id, RngStream::kHidden);
  ev.hidden = sample_hidden_state(effective, hid_rng);

  RngStream sc_rng(cfg.seed, event_id, RngStream::kScatter);
  const ScatterPair sc =
      sample_scatter(cfg.analyzer, effective, ev.hidden, sc_rng);
  ev.theta1_deg = sc.s1.theta_deg;
  ev.phi1_deg = sc.s1.phi_deg;
  ev.theta2_deg = sc.s2.theta_deg;
  ev.phi2_deg = sc.s2.phi_deg;

  RngStream t_rng(cfg.seed, event_id, RngStream::kTiming);
  ev.bunch_offset =
      accidental ? sample_random_bunch_offset(cfg.timing, t_rng) : 0;
  const TimeStamps ts = stamp_times(cfg.timing, ev.bunch_offset, t_rng);
  ev.t1_ns = ts.t1_ns;
  ev.t2_ns = ts.t2_ns;

  ++report.n_events;
  return ev;
}

void generate_chunk(const RunConfig& cfg, std::uint64_t first_id,
                    std::uint64_t n, PairEvent* events,
                    GenerationReport& report) {
  for (std::uint64_t i = 0; i < n; ++i) {
    events[i] = make_event(cfg, first_id + i, report);
  }
}

std::vector<PairEvent> generate_events_serial(const RunConfig& cfg,
                                              GenerationReport* report) {
  GenerationReport local;
  local.seed = cfg.seed;
  std::vector<PairEvent> events(cfg.n_events);
  generate_chunk(cfg, 0, cfg.n_events, events.data(), local);
  if (report) *report = local;
  return events;
}

std::vector<PairEvent> generate_events(const RunConfig& cfg, int n_threads,
                                       GenerationReport* report) {
  GenerationReport total;
  total.seed = cfg.seed;
  std::vector<PairEvent> events(cfg.n_events);
  const auto n_chunks = static_cast<long long>(
      (cfg.n_events + kChunkEvents - 1) / kChunkEvents);

#ifdef _OPENMP
  std::exception_ptr failure;
#pragma omp parallel num_threads(n_threads > 0 ? n_threads : 1)
  {
    GenerationReport mine;
#pragma omp for schedule(static)
    for (long long c = 0; c < n_chunks; ++c) {
      try {
        const std::uint64_t first =
            static_cast<std::uint64_t>(c) * kChunkEvents;
        const std::uint64_t n = std::min(kChunkEvents, cfg.n_events - first);
        generate_chunk(cfg, first, n, events.data() + first, mine);
      } catch (...) {
#pragma omp critical
        if (!failure) failure = std::current_exception();
      }
    }
#pragma omp critical
    total.merge(mine);
  }
  if (failure) std::rethrow_exception(failure);
#else
  (void)n_threads;
  for (long long c = 0; c < n_chunks; ++c) {
    const std::uint64_t first = static_cast<std::uint64_t>(c) * kChunkEvents;
    const std::uint64_t n = std::min(kChunkEvents, cfg.n_events - first);
    generate_chunk(cfg, first, n, events.data() + first, total);
  }
#endif
  if (report) *report = total;
  return events;
}

}  // namespace pairsim
