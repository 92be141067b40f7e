#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "pairsim/analyze.hpp"
#include "pairsim/config.hpp"
#include "pairsim/errors.hpp"
#include "pairsim/event_io.hpp"
#include "pairsim/results.hpp"
#include "pairsim/serialize.hpp"
#include "pairsim/simulate.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::vector<std::string> overrides;
  int threads = 1;
};

void add_config_options(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "run configuration file")
      ->required();
  cmd->add_option("--set", args.overrides,
                  "override a config entry as key=value (repeatable)");
}

void add_threads_option(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--threads", args.threads, "worker count (default 1)")
      ->check(CLI::PositiveNumber);
}

pairsim::RunConfig load_config(const CommonArgs& args) {
  pairsim::RunConfig cfg = pairsim::load_run_config(args.config_path);
  for (const std::string& kv : args.overrides) {
    pairsim::apply_override(cfg, kv);
  }
  cfg.validate();
  return cfg;
}

int finish_run(const std::string& prefix, const pairsim::RunConfig& cfg,
               const pairsim::AnalysisOutput& out) {
  pairsim::write_run_outputs(prefix, cfg, out);
  if (out.empty_sample) {
    std::fprintf(stderr,
                 "no usable coincidences after selection; results document "
                 "written with empty_sample=true\n");
    return pairsim::kExitEmptySample;
  }
  std::printf("%s.json written: %llu true + %llu random coincidences, "
              "%zu Bell and %zu Wigner cases\n",
              prefix.c_str(), static_cast<unsigned long long>(out.n_true),
              static_cast<unsigned long long>(out.n_random), out.bell.size(),
              out.wigner.size());
  return pairsim::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"proton-pair polarization correlation simulator"};
  app.require_subcommand(1);

  CommonArgs gen_args, ana_args, pipe_args, cal_args;
  std::string gen_out, ana_in, ana_out, pipe_out, pipe_events, cal_in;
  std::string tables_dir = ".";

  CLI::App* gen = app.add_subcommand("generate", "simulate an event file");
  add_config_options(gen, gen_args);
  add_threads_option(gen, gen_args);
  gen->add_option("--out", gen_out, "event file to write")->required();

  CLI::App* ana =
      app.add_subcommand("analyze", "run the offline analysis on an event file");
  add_config_options(ana, ana_args);
  add_threads_option(ana, ana_args);
  ana->add_option("--in", ana_in, "event file to read")->required();
  ana->add_option("--out", ana_out, "output prefix for results + sidecars")
      ->required();

  CLI::App* pipe = app.add_subcommand(
      "pipeline", "generate and analyze in one pass");
  add_config_options(pipe, pipe_args);
  add_threads_option(pipe, pipe_args);
  pipe->add_option("--out", pipe_out, "output prefix for results + sidecars")
      ->required();
  pipe->add_option("--events", pipe_events,
                   "also write the intermediate event file here");

  CLI::App* cal = app.add_subcommand(
      "calibrate", "estimate the analyzing power from an event file");
  add_config_options(cal, cal_args);
  cal->add_option("--in", cal_in, "event file to read")->required();

  CLI::App* tab =
      app.add_subcommand("tables", "emit the published reference tables");
  tab->add_option("--out", tables_dir, "directory for the CSV pair");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? pairsim::kExitOk : pairsim::kExitConfigError;
  }

  try {
    if (gen->parsed()) {
      const pairsim::RunConfig cfg = load_config(gen_args);
      pairsim::GenerationReport report;
      const std::vector<pairsim::PairEvent> events =
          pairsim::generate_events(cfg, gen_args.threads, &report);
      pairsim::write_event_file(gen_out, events, cfg.truth_output, &report);
      std::printf("%s written: %llu events (%llu hydrogen, %llu carbon, "
                  "%llu background, %llu random), %llu regenerations\n",
                  gen_out.c_str(),
                  static_cast<unsigned long long>(report.n_events),
                  static_cast<unsigned long long>(report.n_hydrogen),
                  static_cast<unsigned long long>(report.n_carbon),
                  static_cast<unsigned long long>(report.n_background),
                  static_cast<unsigned long long>(report.n_random),
                  static_cast<unsigned long long>(report.regenerations));
      return pairsim::kExitOk;
    }
    if (ana->parsed()) {
      const pairsim::RunConfig cfg = load_config(ana_args);
      const pairsim::AnalysisOutput out = pairsim::analyze_file(cfg, ana_in);
      (void)ana_args.threads;  // file analysis streams chunk by chunk
      return finish_run(ana_out, cfg, out);
    }
    if (pipe->parsed()) {
      const pairsim::RunConfig cfg = load_config(pipe_args);
      pairsim::AnalysisOutput out;
      if (!pipe_events.empty()) {
        pairsim::GenerationReport report;
        const std::vector<pairsim::PairEvent> events =
            pairsim::generate_events(cfg, pipe_args.threads, &report);
        pairsim::write_event_file(pipe_events, events, cfg.truth_output,
                                  &report);
        out = pairsim::analyze_file(cfg, pipe_events);
      } else {
        out = pairsim::run_pipeline(cfg, pipe_args.threads);
      }
      return finish_run(pipe_out, cfg, out);
    }
    if (cal->parsed()) {
      const pairsim::RunConfig cfg = load_config(cal_args);
      const pairsim::AnalysisOutput out = pairsim::analyze_file(cfg, cal_in);
      if (out.empty_sample) {
        std::fprintf(stderr, "no usable coincidences; nothing to calibrate\n");
        return pairsim::kExitEmptySample;
      }
      const pairsim::SelfCalibration& sc = out.self_calibration;
      if (!sc.ok) {
        std::printf("self-calibration failed: mean cos(phi1-phi2) = %s >= 0 "
                    "(%llu entries); the sample carries no analyzable "
                    "correlation\n",
                    pairsim::format_double(sc.mean_cos).c_str(),
                    static_cast<unsigned long long>(sc.n_entries));
        return pairsim::kExitOk;
      }
      std::printf("a_est = %s +- %s (%llu entries, mean cos = %s)\n",
                  pairsim::format_double(sc.a_est).c_str(),
                  pairsim::format_double(sc.sigma_a).c_str(),
                  static_cast<unsigned long long>(sc.n_entries),
                  pairsim::format_double(sc.mean_cos).c_str());
      return pairsim::kExitOk;
    }
    if (tab->parsed()) {
      pairsim::emit_reference_tables(tables_dir);
      std::printf("%s/bell_reference.csv and %s/wigner_reference.csv written\n",
                  tables_dir.c_str(), tables_dir.c_str());
      return pairsim::kExitOk;
    }
  } catch (const pairsim::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return pairsim::kExitConfigError;
  } catch (const pairsim::EmptySampleError& e) {
    std::fprintf(stderr, "empty sample: %s\n", e.what());
    return pairsim::kExitEmptySample;
  } catch (const pairsim::DataError& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return pairsim::kExitDataError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return pairsim::kExitDataError;
  }
  return pairsim::kExitOk;
}
