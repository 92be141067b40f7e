#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "pairsim/analyze.hpp"
#include "pairsim/config.hpp"
#include "pairsim/errors.hpp"
#include "pairsim/event_io.hpp"
#include "pairsim/results.hpp"
#include "pairsim/serialize.hpp"
#include "pairsim/simulate.hpp"

using namespace pairsim;

namespace {

std::filesystem::path temp_dir() {
  const auto dir =
      std::filesystem::temp_directory_path() / "pairsim_io_tests";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

RunConfig small_config(std::uint64_t seed, std::uint64_t n) {
  RunConfig cfg;
  cfg.seed = seed;
  cfg.seed_set = true;
  cfg.n_events = n;
  cfg.validate();
  return cfg;
}

}  // namespace

TEST_CASE("config text round trip") {
  RunConfig cfg = small_config(99, 1234);
  cfg.source.kind = SourceKind::LhvDeterministic;
  cfg.generator.background_fraction = 0.25;
  cfg.timing.random_pair_fraction = 0.1;
  cfg.analysis.bootstrap_resamples = 128;
  cfg.analysis.bell_case_ids = {2, 5};
  cfg.analysis.wigner_case_ids = {};
  cfg.analysis.a_source = ASource::Fixed;
  cfg.truth_output = false;

  std::ostringstream text;
  for (const auto& [k, v] : to_key_values(cfg)) text << k << " = " << v << "\n";

  std::istringstream in(text.str());
  const RunConfig parsed = parse_run_config(in);
  CHECK(to_key_values(parsed) == to_key_values(cfg));
  CHECK(parsed.seed == 99);
  CHECK(parsed.n_events == 1234);
  CHECK(parsed.source.kind == SourceKind::LhvDeterministic);
  CHECK(parsed.analysis.bell_case_ids == std::vector<int>{2, 5});
  CHECK(parsed.analysis.wigner_case_ids.empty());
  CHECK_FALSE(parsed.truth_output);
}

TEST_CASE("config parsing diagnostics carry line numbers") {
  SUBCASE("unknown key") {
    std::istringstream in("seed = 1\nn_events = 10\nwibble = 3\n");
    try {
      parse_run_config(in);
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("wibble") != std::string::npos);
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
  }
  SUBCASE("duplicate key") {
    std::istringstream in("seed = 1\nseed = 2\n");
    try {
      parse_run_config(in);
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("seed") != std::string::npos);
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
  }
  SUBCASE("bad value") {
    std::istringstream in("seed = 1\npeak_sigma_mev = soft\n");
    try {
      parse_run_config(in);
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("peak_sigma_mev") != std::string::npos);
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
  }
  SUBCASE("comments and blank lines are fine") {
    std::istringstream in(
        "# a run\n\nseed = 7\nn_events = 10\nsource_model = lhv_vector\n");
    const RunConfig cfg = parse_run_config(in);
    CHECK(cfg.seed == 7);
    CHECK(cfg.source.kind == SourceKind::LhvVector);
  }
}

TEST_CASE("seed has no default") {
  std::istringstream in("n_events = 10\n");
  RunConfig cfg = parse_run_config(in);
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("overrides reuse the config vocabulary") {
  RunConfig cfg = small_config(1, 10);
  apply_override(cfg, "n_events=777");
  CHECK(cfg.n_events == 777);
  apply_override(cfg, "analyzer_power = 0.2");
  CHECK(cfg.analyzer.analyzing_power == doctest::Approx(0.2));
  apply_override(cfg, "analysis_bell_cases=1,8");
  CHECK(cfg.analysis.bell_case_ids == std::vector<int>{1, 8});
  CHECK_THROWS_AS(apply_override(cfg, "wibble=3"), ConfigError);
  CHECK_THROWS_AS(apply_override(cfg, "no_equals_sign"), ConfigError);
}

TEST_CASE("analysis options validation") {
  RunConfig cfg = small_config(1, 10);
  cfg.analysis.bootstrap_resamples = 10;  // below the resampling floor
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.analysis.bootstrap_resamples = 0;
  cfg.analysis.bell_case_ids = {1, 1};
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.analysis.bell_case_ids = {9};
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("event files rewrite byte-identically") {
  const RunConfig cfg = small_config(2024, 1000);
  GenerationReport report;
  const auto events = generate_events_serial(cfg, &report);

  const auto dir = temp_dir();
  const auto f1 = dir / "round1.csv";
  const auto f2 = dir / "round2.csv";
  write_event_file(f1.string(), events, cfg.truth_output, &report);

  EventFileHeader header;
  const auto back = read_event_file(f1.string(), &header);
  CHECK(back.size() == events.size());
  CHECK(header.has_truth);
  CHECK(header.has_report);
  CHECK(header.report.n_events == 1000);
  CHECK(header.report.seed == 2024);

  write_event_file(f2.string(), back, header.has_truth, &header.report);
  CHECK(slurp(f1) == slurp(f2));
}

TEST_CASE("same seed, same bytes") {
  const RunConfig cfg = small_config(555, 500);
  GenerationReport r1, r2;
  const auto dir = temp_dir();
  const auto f1 = dir / "seed1.csv";
  const auto f2 = dir / "seed2.csv";
  write_event_file(f1.string(), generate_events_serial(cfg, &r1),
                   cfg.truth_output, &r1);
  write_event_file(f2.string(), generate_events_serial(cfg, &r2),
                   cfg.truth_output, &r2);
  CHECK(slurp(f1) == slurp(f2));
}

TEST_CASE("reader rejects foreign schemas and malformed rows") {
  const auto dir = temp_dir();
  const RunConfig cfg = small_config(77, 5);
  GenerationReport report;
  const auto events = generate_events_serial(cfg, &report);
  const auto good = dir / "good.csv";
  write_event_file(good.string(), events, true, &report);

  SUBCASE("wrong version line") {
    const auto bad = dir / "bad_version.csv";
    std::string text = slurp(good);
    text.replace(text.find("pair-events v1"), 14, "pair-events v9");
    spit(bad, text);
    try {
      read_event_file(bad.string(), nullptr);
      FAIL("expected DataError");
    } catch (const DataError& e) {
      // The message names both versions so the mismatch is obvious.
      CHECK(std::string(e.what()).find("pair-events v9") != std::string::npos);
      CHECK(std::string(e.what()).find("pair-events v1") != std::string::npos);
    }
  }

  SUBCASE("renamed column") {
    const auto bad = dir / "bad_column.csv";
    std::string text = slurp(good);
    text.replace(text.find("phi1_deg"), 8, "phi1_rad");
    spit(bad, text);
    try {
      read_event_file(bad.string(), nullptr);
      FAIL("expected DataError");
    } catch (const DataError& e) {
      CHECK(std::string(e.what()).find("phi1") != std::string::npos);
    }
  }

  SUBCASE("truncated final row names its line") {
    const auto bad = dir / "truncated.csv";
    std::string text = slurp(good);
    text.resize(text.find_last_of(',') - 10);  // chop inside the last record
    spit(bad, text);
    try {
      read_event_file(bad.string(), nullptr);
      FAIL("expected DataError");
    } catch (const DataError& e) {
      CHECK(std::string(e.what()).find("line 8") != std::string::npos);
    }
  }

  SUBCASE("unreadable number names column and line") {
    const auto bad = dir / "bad_number.csv";
    std::string text = slurp(good);
    // Corrupt the first row's t1 field (third column, line 4).
    const auto row_start = text.find("\n0,") + 1;
    auto p = text.find(',', text.find(',', row_start) + 1);
    text.replace(p + 1, 3, "x!z");
    spit(bad, text);
    try {
      read_event_file(bad.string(), nullptr);
      FAIL("expected DataError");
    } catch (const DataError& e) {
      CHECK(std::string(e.what()).find("t1_ns") != std::string::npos);
      CHECK(std::string(e.what()).find("line 4") != std::string::npos);
    }
  }

  SUBCASE("missing file") {
    CHECK_THROWS_AS(
        static_cast<void>(read_event_file((dir / "nope.csv").string(),
                                          nullptr)),
        DataError);
  }
}

TEST_CASE("truth columns appear only when asked for") {
  const auto dir = temp_dir();
  RunConfig cfg = small_config(31, 20);
  cfg.source.kind = SourceKind::LhvVector;
  cfg.source.response = ResponsePreset::Cosine;
  cfg.generator.background_fraction = 0.0;
  cfg.timing.random_pair_fraction = 0.0;

  GenerationReport report;
  const auto events = generate_events_serial(cfg, &report);

  const auto with = dir / "with_truth.csv";
  const auto without = dir / "without_truth.csv";
  write_event_file(with.string(), events, true, &report);
  write_event_file(without.string(), events, false, &report);

  const std::string truth_text = slurp(with);
  const std::string plain_text = slurp(without);
  CHECK(truth_text.find("hidden_azimuth_deg") != std::string::npos);
  CHECK(truth_text.find("bunch_offset") != std::string::npos);
  CHECK(plain_text.find("hidden_azimuth_deg") == std::string::npos);
  // The channel tag is operational metadata, not truth.
  CHECK(plain_text.find("source_tag") != std::string::npos);
  CHECK(plain_text.find("hydrogen") != std::string::npos);

  EventFileHeader h1, h2;
  const auto back_truth = read_event_file(with.string(), &h1);
  const auto back_plain = read_event_file(without.string(), &h2);
  CHECK(h1.has_truth);
  CHECK_FALSE(h2.has_truth);
  CHECK(back_truth[0].hidden.kind == HiddenState::Kind::PolarizationAzimuth);
  CHECK(back_truth[0].hidden.azimuth_deg >= 0.0);
  // Without truth columns the hidden state stays at its blank default.
  CHECK(back_plain[0].hidden.kind == HiddenState::Kind::Unpolarized);
  CHECK(back_plain[0].hidden.azimuth_deg == -1.0);

  // Both files drive the analysis to the same answer: the truth columns are
  // never read by the estimator chain.
  const AnalysisOutput a1 = analyze_file(cfg, with.string());
  const AnalysisOutput a2 = analyze_file(cfg, without.string());
  CHECK(results_document(cfg, a1) == results_document(cfg, a2));
}

TEST_CASE("channel composition follows the configured fractions") {
  RunConfig cfg = small_config(404, 20000);
  cfg.generator.background_fraction = 0.3;
  cfg.generator.carbon_to_hydrogen_ratio = 0.5;
  cfg.timing.random_pair_fraction = 0.1;

  GenerationReport report;
  const auto events = generate_events(cfg, 1, &report);
  CHECK(report.n_events == 20000);
  CHECK(report.n_hydrogen + report.n_carbon + report.n_background +
            report.n_random ==
        report.n_events);

  // Expected shares: 10% random; of the rest, 30% background, and the
  // remainder split 1:2 carbon:hydrogen.
  const double n = 20000.0;
  const auto within4 = [n](std::uint64_t count, double p) {
    return std::fabs(count - n * p) < 4.0 * std::sqrt(n * p * (1 - p));
  };
  CHECK(within4(report.n_random, 0.10));
  CHECK(within4(report.n_background, 0.9 * 0.3));
  CHECK(within4(report.n_carbon, 0.9 * 0.7 / 3.0));
  CHECK(within4(report.n_hydrogen, 0.9 * 0.7 * 2.0 / 3.0));

  int tagged_random = 0;
  for (const auto& ev : events) {
    if (ev.channel == Channel::RandomPair) ++tagged_random;
  }
  CHECK(static_cast<std::uint64_t>(tagged_random) == report.n_random);
}

TEST_CASE("all-background run tags every record") {
  RunConfig cfg = small_config(7, 300);
  cfg.generator.background_fraction = 1.0;
  GenerationReport report;
  const auto events = generate_events_serial(cfg, &report);
  CHECK(report.n_background == 300);
  for (const auto& ev : events) {
    CHECK(ev.channel == Channel::Background);
    CHECK(ev.hidden.kind == HiddenState::Kind::Unpolarized);
  }
}

TEST_CASE("pipeline equals generate-then-analyze, byte for byte") {
  RunConfig cfg = small_config(606, 20000);
  cfg.generator.background_fraction = 0.1;
  cfg.timing.random_pair_fraction = 0.05;
  cfg.analysis.bootstrap_resamples = 64;

  const auto dir = temp_dir();
  const auto file = dir / "two_step.csv";
  GenerationReport report;
  const auto events = generate_events_serial(cfg, &report);
  write_event_file(file.string(), events, cfg.truth_output, &report);
  const AnalysisOutput two_step = analyze_file(cfg, file.string());

  const AnalysisOutput fused = run_pipeline_serial(cfg);
  CHECK(results_document(cfg, fused) == results_document(cfg, two_step));
}

TEST_CASE("zero events yield an explicit empty-sample document") {
  const RunConfig cfg = small_config(1, 0);
  const AnalysisOutput out = run_pipeline_serial(cfg);
  CHECK(out.empty_sample);
  const std::string doc = results_document(cfg, out);
  const auto j = nlohmann::json::parse(doc);
  CHECK(j["empty_sample"] == true);
  CHECK(j["selection"]["n_input"] == 0);
  CHECK_FALSE(j.contains("correlations"));
}

TEST_CASE("results document embeds the resolved config") {
  RunConfig cfg = small_config(11, 2000);
  cfg.analyzer.analyzing_power = 0.2;
  const AnalysisOutput out = run_pipeline_serial(cfg);
  const auto j = nlohmann::json::parse(results_document(cfg, out));
  CHECK(j["schema"] == "pairsim-results v1");
  CHECK(j["config"]["seed"] == "11");
  CHECK(j["config"]["analyzer_power"] == "0.2");
  CHECK(j["generation"]["seed"] == 11);
  CHECK(j["bell"].size() == 8);
  CHECK(j["wigner"].size() == 6);
  for (const auto& b : j["bell"]) {
    CHECK(b["classical_limit"] == 2.0);
    CHECK(b.contains("verdict"));
  }
  // Round-trip: the embedded config reparses to the same key set.
  std::ostringstream text;
  for (const auto& [k, v] : j["config"].items()) {
    text << k << " = " << v.get<std::string>() << "\n";
  }
  std::istringstream in(text.str());
  const RunConfig back = parse_run_config(in);
  CHECK(to_key_values(back) == to_key_values(cfg));
}

TEST_CASE("sidecar files land next to the results document") {
  const auto dir = temp_dir();
  const RunConfig cfg = small_config(21, 5000);
  const AnalysisOutput out = run_pipeline_serial(cfg);
  const std::string prefix = (dir / "run").string();
  write_run_outputs(prefix, cfg, out);

  CHECK(std::filesystem::exists(prefix + ".json"));
  const std::string energy = slurp(prefix + "_energy_sum.csv");
  CHECK(energy.find("bin_center,count") != std::string::npos);
  const std::string dt = slurp(prefix + "_dt.csv");
  CHECK(dt.find("bin_center,count") != std::string::npos);
  const std::string bell = slurp(prefix + "_bell.csv");
  CHECK(bell.find("case_id,measured,sigma,qm,limit") != std::string::npos);
  CHECK(std::count(bell.begin(), bell.end(), '\n') == 9);
  const std::string wig = slurp(prefix + "_wigner.csv");
  CHECK(std::count(wig.begin(), wig.end(), '\n') == 7);
}

TEST_CASE("reference tables round trip through their CSV form") {
  const auto dir = temp_dir();
  emit_reference_tables(dir.string());

  std::ifstream bell(dir / "bell_reference.csv");
  std::string line;
  std::getline(bell, line);
  CHECK(line ==
        "case_id,a_deg,b_deg,a2_deg,b2_deg,qm,limit,experiment,"
        "experiment_sigma");
  int rows = 0;
  while (std::getline(bell, line)) {
    ++rows;
    std::stringstream ss(line);
    std::string field;
    std::getline(ss, field, ',');
    const int id = static_cast<int>(parse_i64(field, "case_id"));
    const BellCase& c = bell_case(id);
    for (double expected :
         {c.a_deg, c.b_deg, c.a2_deg, c.b2_deg, c.qm_prediction,
          BellCase::kLimit, c.experiment, c.experiment_sigma}) {
      std::getline(ss, field, ',');
      CHECK(parse_double(field, "field") == expected);
    }
  }
  CHECK(rows == 8);

  std::ifstream wig(dir / "wigner_reference.csv");
  std::getline(wig, line);
  rows = 0;
  while (std::getline(wig, line)) ++rows;
  CHECK(rows == 6);
}
