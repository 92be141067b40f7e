#include "pairsim/analyze.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <cmath>
#include <exception>

#include "pairsim/axis.hpp"
#include "pairsim/errors.hpp"
#include "pairsim/event_io.hpp"
#include "pairsim/polarimeter.hpp"

namespace pairsim {

namespace {

// Axis settings and histogram ranges resolved once per run.
struct Plan {
  const RunConfig* cfg;
  std::vector<double> axes;  // unique axis angles
  struct Setting {
    double a_deg, b_deg;
    int ia, ib;  // indices into axes
  };
  std::vector<Setting> settings;
  struct BellPlan {
    const BellCase* c;
    int ab, ab2, a2b, a2b2;  // setting indices
  };
  struct WignerPlan {
    const WignerCase* c;
    int ac, ab, bc;
  };
  std::vector<BellPlan> bell;
  std::vector<WignerPlan> wigner;
  double energy_lo = 0.0, energy_hi = 0.0;
  double dt_lo = 0.0, dt_hi = 0.0;
};

Plan make_plan(const RunConfig& cfg) {
  Plan plan;
  plan.cfg = &cfg;

  auto axis_index = [&plan](double deg) {
    const double a = normalize_angle_deg(deg);
    for (size_t i = 0; i < plan.axes.size(); ++i) {
      if (plan.axes[i] == a) return static_cast<int>(i);
    }
    plan.axes.push_back(a);
    return static_cast<int>(plan.axes.size() - 1);
  };
  auto setting_index = [&plan, &axis_index](double a_deg, double b_deg) {
    const double a = normalize_angle_deg(a_deg);
    const double b = normalize_angle_deg(b_deg);
    for (size_t i = 0; i < plan.settings.size(); ++i) {
      if (plan.settings[i].a_deg == a && plan.settings[i].b_deg == b) {
        return static_cast<int>(i);
      }
    }
    plan.settings.push_back({a, b, axis_index(a), axis_index(b)});
    return static_cast<int>(plan.settings.size() - 1);
  };

  for (int id : cfg.analysis.bell_case_ids) {
    const BellCase& c = bell_case(id);
    plan.bell.push_back({&c, setting_index(c.a_deg, c.b_deg),
                         setting_index(c.a_deg, c.b2_deg),
                         setting_index(c.a2_deg, c.b_deg),
                         setting_index(c.a2_deg, c.b2_deg)});
  }
  for (int id : cfg.analysis.wigner_case_ids) {
    const WignerCase& c = wigner_case(id);
    plan.wigner.push_back({&c, setting_index(c.a_deg, c.c_deg),
                           setting_index(c.a_deg, c.b_deg),
                           setting_index(c.b_deg, c.c_deg)});
  }

  const double p_max = cfg.generator.momentum_window_max_mevc;
  const double ke_max =
      std::sqrt(p_max * p_max + kProtonMassMeV * kProtonMassMeV) -
      kProtonMassMeV;
  plan.energy_lo = 0.0;
  plan.energy_hi =
      std::max({2.0 * ke_max,
                cfg.generator.peak_sum_h_mev + 10.0 * cfg.generator.peak_sigma_mev,
                cfg.generator.peak_sum_c_mev +
                    10.0 * cfg.generator.peak_sigma_mev}) +
      5.0;
  plan.dt_lo = -cfg.timing.tdc_range_ns;
  plan.dt_hi = cfg.timing.tdc_range_ns;
  return plan;
}

struct Accumulator {
  SelectionReport selection;
  std::uint64_t fail_scatter = 0;
  std::uint64_t n_true_cls = 0, n_random_cls = 0, n_outside = 0;
  std::vector<OutcomeCounts> counts;
  MomentSums cos_true, cos_random;
  Histogram energy;
  Histogram dt;
  std::vector<int> s1_scratch, s2_scratch;

  explicit Accumulator(const Plan& plan)
      : counts(plan.settings.size()),
        energy(plan.energy_lo, plan.energy_hi,
               plan.cfg->analysis.energy_bin_mev),
        dt(plan.dt_lo, plan.dt_hi, plan.cfg->timing.tdc_bin_ns),
        s1_scratch(plan.axes.size()),
        s2_scratch(plan.axes.size()) {}

  void add(const Plan& plan, const PairEvent& ev) {
    const RunConfig& cfg = *plan.cfg;
    energy.fill(kinetic_energy(ev.p1, kProtonMassMeV) +
                kinetic_energy(ev.p2, kProtonMassMeV));
    const double dt_ns = ev.t1_ns - ev.t2_ns;
    dt.fill(dt_ns);

    if (!pass_selection(cfg.generator, cfg.analysis.ke_cut_mev, ev,
                        selection)) {
      return;
    }
    const Acceptance acc = accept_scatter(
        cfg.analyzer, {{ev.theta1_deg, ev.phi1_deg},
                       {ev.theta2_deg, ev.phi2_deg}});
    if (!acc.accepted) {
      ++fail_scatter;
      return;
    }
    const CoincidenceClass cls = classify_coincidence(cfg.timing, dt_ns);
    if (cls == CoincidenceClass::Outside) {
      ++n_outside;
      return;
    }
    const bool is_random = cls == CoincidenceClass::Random;
    if (is_random) {
      ++n_random_cls;
    } else {
      ++n_true_cls;
    }

    for (size_t k = 0; k < plan.axes.size(); ++k) {
      s1_scratch[k] = classify_outcome(ev.phi1_deg, plan.axes[k]);
      s2_scratch[k] = classify_outcome(ev.phi2_deg, plan.axes[k]);
    }
    for (size_t i = 0; i < plan.settings.size(); ++i) {
      const Plan::Setting& s = plan.settings[i];
      counts[i].add(s1_scratch[static_cast<size_t>(s.ia)],
                    s2_scratch[static_cast<size_t>(s.ib)], is_random);
    }
    const double c = std::cos(deg_to_rad(ev.phi1_deg - ev.phi2_deg));
    (is_random ? cos_random : cos_true).add(c, 1.0);
  }

  void merge(const Accumulator& o) {
    selection.merge(o.selection);
    fail_scatter += o.fail_scatter;
    n_true_cls += o.n_true_cls;
    n_random_cls += o.n_random_cls;
    n_outside += o.n_outside;
    for (size_t i = 0; i < counts.size(); ++i) counts[i].merge(o.counts[i]);
    cos_true.merge(o.cos_true);
    cos_random.merge(o.cos_random);
    energy.merge(o.energy);
    dt.merge(o.dt);
  }
};

// Signed combination of the true-class and random-class moment sums: random
// entries enter with weight -w.
MomentSums subtract_scaled(const MomentSums& t, const MomentSums& r, double w) {
  MomentSums out = t;
  if (w == 0.0) return out;
  out.sum_w -= w * r.sum_w;
  out.sum_w2 += w * w * r.sum_w2;
  out.sum_wc -= w * r.sum_wc;
  out.sum_wc2 -= w * r.sum_wc2;
  out.n_entries += r.n_entries;
  return out;
}

AnalysisOutput finalize(const Plan& plan, Accumulator&& acc,
                        const GenerationReport* generation) {
  const RunConfig& cfg = *plan.cfg;
  AnalysisOutput out;
  out.selection = acc.selection;
  out.fail_scatter_band = acc.fail_scatter;
  out.n_true = acc.n_true_cls;
  out.n_random = acc.n_random_cls;
  out.n_outside = acc.n_outside;
  out.energy_sum = std::move(acc.energy);
  out.dt = std::move(acc.dt);
  if (generation) {
    out.generation = *generation;
    out.has_generation = true;
  }

  out.subtraction_enabled = cfg.analysis.subtract_randoms;
  out.subtraction = random_subtraction_weights(
      cfg.timing, out.subtraction_enabled ? acc.n_random_cls : 0);
  const double w = out.subtraction_enabled ? out.subtraction.weight : 0.0;

  const std::uint64_t usable =
      acc.n_true_cls + (w > 0.0 ? acc.n_random_cls : 0);
  if (usable == 0) {
    out.empty_sample = true;
    return out;
  }

  out.self_calibration = self_calibrate_analyzing_power(
      subtract_scaled(acc.cos_true, acc.cos_random, w));

  out.a_used = cfg.analyzer.analyzing_power;
  if (cfg.analysis.a_source == ASource::SelfCalibrated) {
    if (out.self_calibration.ok && out.self_calibration.a_est > 0.0) {
      out.a_used = out.self_calibration.a_est;
    } else {
      out.calibration_fell_back = true;
    }
  }
  const Calibration cal = Calibration::analyzer(out.a_used);

  out.correlations.reserve(plan.settings.size());
  for (size_t i = 0; i < plan.settings.size(); ++i) {
    CorrelationRecord rec;
    rec.estimate = estimate_correlation(
        acc.counts[i], MeasurementAxis(plan.settings[i].a_deg),
        MeasurementAxis(plan.settings[i].b_deg), cal, w);
    if (cfg.analysis.bootstrap_resamples > 0) {
      RngStream rng(cfg.seed, static_cast<std::uint64_t>(i),
                    RngStream::kBootstrap);
      rec.bootstrap_sigma = bootstrap_sigma(
          acc.counts[i], rec.estimate.axis_a, rec.estimate.axis_b, cal, w,
          cfg.analysis.bootstrap_resamples, rng);
      rec.has_bootstrap = true;
    }
    out.correlations.push_back(rec);
  }

  for (const Plan::BellPlan& b : plan.bell) {
    out.bell.push_back(evaluate_bell(
        *b.c, out.correlations[static_cast<size_t>(b.ab)].estimate,
        out.correlations[static_cast<size_t>(b.ab2)].estimate,
        out.correlations[static_cast<size_t>(b.a2b)].estimate,
        out.correlations[static_cast<size_t>(b.a2b2)].estimate));
  }
  for (const Plan::WignerPlan& wc : plan.wigner) {
    out.wigner.push_back(evaluate_wigner(
        *wc.c,
        wigner_probability(
            out.correlations[static_cast<size_t>(wc.ac)].estimate),
        wigner_probability(
            out.correlations[static_cast<size_t>(wc.ab)].estimate),
        wigner_probability(
            out.correlations[static_cast<size_t>(wc.bc)].estimate)));
  }
  return out;
}

Accumulator fold_chunks(const Plan& plan, std::vector<Accumulator>&& parts) {
  Accumulator total(plan);
  for (Accumulator& part : parts) total.merge(part);
  return total;
}

Accumulator accumulate_span_serial(const Plan& plan,
                                   std::span<const PairEvent> events) {
  const size_t n_chunks =
      (events.size() + kChunkEvents - 1) / kChunkEvents;
  std::vector<Accumulator> parts;
  parts.reserve(n_chunks);
  for (size_t c = 0; c < n_chunks; ++c) {
    Accumulator acc(plan);
    const size_t first = c * kChunkEvents;
    const size_t last = std::min(events.size(), first + kChunkEvents);
    for (size_t i = first; i < last; ++i) acc.add(plan, events[i]);
    parts.push_back(std::move(acc));
  }
  return fold_chunks(plan, std::move(parts));
}

Accumulator accumulate_span(const Plan& plan, std::span<const PairEvent> events,
                            int n_threads) {
  const auto n_chunks = static_cast<long long>(
      (events.size() + kChunkEvents - 1) / kChunkEvents);
  std::vector<Accumulator> parts(static_cast<size_t>(n_chunks),
                                 Accumulator(plan));
#ifdef _OPENMP
#pragma omp parallel for schedule(static) \
    num_threads(n_threads > 0 ? n_threads : 1)
  for (long long c = 0; c < n_chunks; ++c) {
    const size_t first = static_cast<size_t>(c) * kChunkEvents;
    const size_t last = std::min(events.size(), first + kChunkEvents);
    for (size_t i = first; i < last; ++i) {
      parts[static_cast<size_t>(c)].add(plan, events[i]);
    }
  }
#else
  (void)n_threads;
  for (long long c = 0; c < n_chunks; ++c) {
    const size_t first = static_cast<size_t>(c) * kChunkEvents;
    const size_t last = std::min(events.size(), first + kChunkEvents);
    for (size_t i = first; i < last; ++i) {
      parts[static_cast<size_t>(c)].add(plan, events[i]);
    }
  }
#endif
  return fold_chunks(plan, std::move(parts));
}

}  // namespace

AnalysisOutput analyze_events_serial(const RunConfig& cfg,
                                     std::span<const PairEvent> events,
                                     const GenerationReport* generation) {
  const Plan plan = make_plan(cfg);
  return finalize(plan, accumulate_span_serial(plan, events), generation);
}

AnalysisOutput analyze_events(const RunConfig& cfg,
                              std::span<const PairEvent> events, int n_threads,
                              const GenerationReport* generation) {
  const Plan plan = make_plan(cfg);
  return finalize(plan, accumulate_span(plan, events, n_threads), generation);
}

AnalysisOutput analyze_file(const RunConfig& cfg, const std::string& path) {
  const Plan plan = make_plan(cfg);
  EventFileReader reader(path);

  std::vector<Accumulator> parts;
  std::vector<PairEvent> buffer;
  buffer.reserve(kChunkEvents);
  for (;;) {
    buffer.clear();
    if (reader.read_chunk(buffer, kChunkEvents) == 0) break;
    Accumulator acc(plan);
    for (const PairEvent& ev : buffer) acc.add(plan, ev);
    parts.push_back(std::move(acc));
  }

  const GenerationReport* report =
      reader.header().has_report ? &reader.header().report : nullptr;
  return finalize(plan, fold_chunks(plan, std::move(parts)), report);
}

AnalysisOutput run_pipeline_serial(const RunConfig& cfg) {
  const Plan plan = make_plan(cfg);
  GenerationReport report;
  report.seed = cfg.seed;

  const std::uint64_t n_chunks =
      (cfg.n_events + kChunkEvents - 1) / kChunkEvents;
  std::vector<Accumulator> parts;
  parts.reserve(static_cast<size_t>(n_chunks));
  std::vector<PairEvent> buffer(kChunkEvents);
  for (std::uint64_t c = 0; c < n_chunks; ++c) {
    const std::uint64_t first = c * kChunkEvents;
    const std::uint64_t n = std::min(kChunkEvents, cfg.n_events - first);
    generate_chunk(cfg, first, n, buffer.data(), report);
    Accumulator acc(plan);
    for (std::uint64_t i = 0; i < n; ++i) acc.add(plan, buffer[i]);
    parts.push_back(std::move(acc));
  }
  return finalize(plan, fold_chunks(plan, std::move(parts)), &report);
}

AnalysisOutput run_pipeline(const RunConfig& cfg, int n_threads) {
  const Plan plan = make_plan(cfg);
  GenerationReport total;
  total.seed = cfg.seed;

  const auto n_chunks = static_cast<long long>(
      (cfg.n_events + kChunkEvents - 1) / kChunkEvents);
  std::vector<Accumulator> parts(static_cast<size_t>(n_chunks),
                                 Accumulator(plan));
#ifdef _OPENMP
  std::exception_ptr failure;
#pragma omp parallel num_threads(n_threads > 0 ? n_threads : 1)
  {
    GenerationReport mine;
    std::vector<PairEvent> buffer(kChunkEvents);
#pragma omp for schedule(static)
    for (long long c = 0; c < n_chunks; ++c) {
      try {
        const std::uint64_t first =
            static_cast<std::uint64_t>(c) * kChunkEvents;
        const std::uint64_t n = std::min(kChunkEvents, cfg.n_events - first);
        generate_chunk(cfg, first, n, buffer.data(), mine);
        for (std::uint64_t i = 0; i < n; ++i) {
          parts[static_cast<size_t>(c)].add(plan, buffer[i]);
        }
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
  std::vector<PairEvent> buffer(kChunkEvents);
  for (long long c = 0; c < n_chunks; ++c) {
    const std::uint64_t first = static_cast<std::uint64_t>(c) * kChunkEvents;
    const std::uint64_t n = std::min(kChunkEvents, cfg.n_events - first);
    generate_chunk(cfg, first, n, buffer.data(), total);
    for (std::uint64_t i = 0; i < n; ++i) {
      parts[static_cast<size_t>(c)].add(plan, buffer[i]);
    }
  }
#endif
  return finalize(plan, fold_chunks(plan, std::move(parts)), &total);
}

}  // namespace pairsim
