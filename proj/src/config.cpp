#include "pairsim/config.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <istream>
#include <set>
#include <sstream>

#include "pairsim/errors.hpp"
#include "pairsim/inequalities.hpp"
#include "pairsim/serialize.hpp"

namespace pairsim {

void AnalysisOptions::validate() const {
  if (ke_cut_mev < 0.0) {
    throw ConfigError("analysis_ke_cut_mev must be non-negative");
  }
  if (!(energy_bin_mev > 0.0)) {
    throw ConfigError("analysis_energy_bin_mev must be positive");
  }
  if (bootstrap_resamples != 0 && bootstrap_resamples < 50) {
    throw ConfigError(
        "analysis_bootstrap_resamples must be 0 (off) or at least 50");
  }
  std::set<int> seen;
  for (int id : bell_case_ids) {
    bell_case(id);
    if (!seen.insert(id).second) {
      throw ConfigError("duplicate Bell case id " + std::to_string(id));
    }
  }
  seen.clear();
  for (int id : wigner_case_ids) {
    wigner_case(id);
    if (!seen.insert(id).second) {
      throw ConfigError("duplicate Wigner case id " + std::to_string(id));
    }
  }
}

void RunConfig::validate() const {
  if (!seed_set) {
    throw ConfigError("seed is required and has no default; set seed=<value>");
  }
  generator.validate();
  analyzer.validate();
  timing.validate();
  analysis.validate();
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

bool parse_bool(std::string_view v, const std::string& key, size_t line) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw ConfigError("value for " + key + " must be 'true' or 'false'" +
                    (line ? " (line " + std::to_string(line) + ")" : ""));
}

std::vector<int> parse_case_list(std::string_view v, const std::string& key,
                                 int max_id, size_t line) {
  std::vector<int> ids;
  if (v == "none") return ids;
  if (v == "all") {
    for (int i = 1; i <= max_id; ++i) ids.push_back(i);
    return ids;
  }
  std::string buf(v);
  std::stringstream ss(buf);
  std::string item;
  while (std::getline(ss, item, ',')) {
    ids.push_back(static_cast<int>(
        parse_i64<ConfigError>(trim(item), key, line)));
  }
  if (ids.empty()) {
    throw ConfigError("empty case list for " + key);
  }
  return ids;
}

std::string format_case_list(const std::vector<int>& ids) {
  if (ids.empty()) return "none";
  std::string out;
  for (size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(ids[i]);
  }
  return out;
}

struct KeyDef {
  std::string key;
  std::function<void(RunConfig&, std::string_view, size_t)> set;
  std::function<std::string(const RunConfig&)> get;
};

KeyDef dkey(const char* key, std::function<double&(RunConfig&)> ref) {
  return {key,
          [ref, key](RunConfig& c, std::string_view v, size_t line) {
            ref(c) = parse_double<ConfigError>(v, key, line);
          },
          [ref](const RunConfig& c) {
            return format_double(ref(const_cast<RunConfig&>(c)));
          }};
}

KeyDef bkey(const char* key, std::function<bool&(RunConfig&)> ref) {
  return {key,
          [ref, key](RunConfig& c, std::string_view v, size_t line) {
            ref(c) = parse_bool(v, key, line);
          },
          [ref](const RunConfig& c) {
            return ref(const_cast<RunConfig&>(c)) ? "true" : "false";
          }};
}

KeyDef ikey(const char* key, std::function<int&(RunConfig&)> ref) {
  return {key,
          [ref, key](RunConfig& c, std::string_view v, size_t line) {
            const long long raw = parse_i64<ConfigError>(v, key, line);
            if (raw < 0 || raw > INT32_MAX) {
              throw ConfigError(std::string("value for ") + key +
                                " is out of range");
            }
            ref(c) = static_cast<int>(raw);
          },
          [ref](const RunConfig& c) {
            return std::to_string(ref(const_cast<RunConfig&>(c)));
          }};
}

const std::vector<KeyDef>& key_defs() {
  static const std::vector<KeyDef> defs = [] {
    std::vector<KeyDef> d;
    d.push_back({"seed",
                 [](RunConfig& c, std::string_view v, size_t line) {
                   c.seed = parse_u64<ConfigError>(v, "seed", line);
                   c.seed_set = true;
                 },
                 [](const RunConfig& c) { return format_u64(c.seed); }});
    d.push_back({"n_events",
                 [](RunConfig& c, std::string_view v, size_t line) {
                   c.n_events = parse_u64<ConfigError>(v, "n_events", line);
                 },
                 [](const RunConfig& c) { return format_u64(c.n_events); }});
    d.push_back({"source_model",
                 [](RunConfig& c, std::string_view v, size_t) {
                   c.source.kind = source_kind_from_string(std::string(v));
                 },
                 [](const RunConfig& c) { return to_string(c.source.kind); }});
    d.push_back({"response_preset",
                 [](RunConfig& c, std::string_view v, size_t line) {
                   if (v == "sign") {
                     c.source.response = ResponsePreset::Sign;
                   } else if (v == "cosine") {
                     c.source.response = ResponsePreset::Cosine;
                   } else {
                     throw ConfigError(
                         "response_preset must be 'sign' or 'cosine'" +
                         (line ? " (line " + std::to_string(line) + ")"
                               : std::string()));
                   }
                 },
                 [](const RunConfig& c) {
                   return std::string(c.source.response == ResponsePreset::Sign
                                          ? "sign"
                                          : "cosine");
                 }});
    d.push_back(bkey("truth_output",
                     [](RunConfig& c) -> bool& { return c.truth_output; }));

    auto gen = [](RunConfig& c) -> GeneratorConfig& { return c.generator; };
    d.push_back(dkey("beam_energy_mev", [gen](RunConfig& c) -> double& {
      return gen(c).beam_energy_mev;
    }));
    d.push_back(dkey("peak_sum_h_mev", [gen](RunConfig& c) -> double& {
      return gen(c).peak_sum_h_mev;
    }));
    d.push_back(dkey("peak_sum_c_mev", [gen](RunConfig& c) -> double& {
      return gen(c).peak_sum_c_mev;
    }));
    d.push_back(dkey("peak_sigma_mev", [gen](RunConfig& c) -> double& {
      return gen(c).peak_sigma_mev;
    }));
    d.push_back(dkey("relative_ke_max_gen_mev", [gen](RunConfig& c) -> double& {
      return gen(c).relative_ke_max_gen_mev;
    }));
    d.push_back(dkey("background_fraction", [gen](RunConfig& c) -> double& {
      return gen(c).background_fraction;
    }));
    d.push_back(dkey("carbon_to_hydrogen_ratio",
                     [gen](RunConfig& c) -> double& {
                       return gen(c).carbon_to_hydrogen_ratio;
                     }));
    d.push_back(dkey("momentum_window_min_mevc", [gen](RunConfig& c) -> double& {
      return gen(c).momentum_window_min_mevc;
    }));
    d.push_back(dkey("momentum_window_max_mevc", [gen](RunConfig& c) -> double& {
      return gen(c).momentum_window_max_mevc;
    }));
    d.push_back(dkey("background_cone_deg", [gen](RunConfig& c) -> double& {
      return gen(c).background_cone_deg;
    }));
    d.push_back(ikey("max_regenerations", [gen](RunConfig& c) -> int& {
      return gen(c).max_regenerations;
    }));

    auto ana = [](RunConfig& c) -> AnalyzerConfig& { return c.analyzer; };
    d.push_back(dkey("analyzer_power", [ana](RunConfig& c) -> double& {
      return ana(c).analyzing_power;
    }));
    d.push_back(dkey("analyzer_coulomb_cut_deg", [ana](RunConfig& c) -> double& {
      return ana(c).coulomb_cut_deg;
    }));
    d.push_back(dkey("analyzer_band_min_deg", [ana](RunConfig& c) -> double& {
      return ana(c).band_min_deg;
    }));
    d.push_back(dkey("analyzer_band_max_deg", [ana](RunConfig& c) -> double& {
      return ana(c).band_max_deg;
    }));
    d.push_back(dkey("analyzer_coulomb_fraction",
                     [ana](RunConfig& c) -> double& {
                       return ana(c).coulomb_fraction;
                     }));

    auto tim = [](RunConfig& c) -> TimingConfig& { return c.timing; };
    d.push_back(dkey("rf_frequency_mhz", [tim](RunConfig& c) -> double& {
      return tim(c).rf_frequency_mhz;
    }));
    d.push_back(dkey("hardware_window_ns", [tim](RunConfig& c) -> double& {
      return tim(c).hardware_window_ns;
    }));
    d.push_back(dkey("true_window_ns", [tim](RunConfig& c) -> double& {
      return tim(c).true_window_ns;
    }));
    d.push_back(dkey("tdc_bin_ns", [tim](RunConfig& c) -> double& {
      return tim(c).tdc_bin_ns;
    }));
    d.push_back(dkey("tdc_range_ns", [tim](RunConfig& c) -> double& {
      return tim(c).tdc_range_ns;
    }));
    d.push_back(dkey("time_resolution_sigma_ns", [tim](RunConfig& c) -> double& {
      return tim(c).time_resolution_sigma_ns;
    }));
    d.push_back(dkey("random_pair_fraction", [tim](RunConfig& c) -> double& {
      return tim(c).random_pair_fraction;
    }));

    auto an = [](RunConfig& c) -> AnalysisOptions& { return c.analysis; };
    d.push_back(dkey("analysis_ke_cut_mev", [an](RunConfig& c) -> double& {
      return an(c).ke_cut_mev;
    }));
    d.push_back(dkey("analysis_energy_bin_mev", [an](RunConfig& c) -> double& {
      return an(c).energy_bin_mev;
    }));
    d.push_back({"analysis_a_source",
                 [](RunConfig& c, std::string_view v, size_t line) {
                   if (v == "self_calibrated") {
                     c.analysis.a_source = ASource::SelfCalibrated;
                   } else if (v == "fixed") {
                     c.analysis.a_source = ASource::Fixed;
                   } else {
                     throw ConfigError(
                         "analysis_a_source must be 'self_calibrated' or "
                         "'fixed'" +
                         (line ? " (line " + std::to_string(line) + ")"
                               : std::string()));
                   }
                 },
                 [](const RunConfig& c) {
                   return std::string(c.analysis.a_source ==
                                              ASource::SelfCalibrated
                                          ? "self_calibrated"
                                          : "fixed");
                 }});
    d.push_back(bkey("analysis_subtract_randoms", [](RunConfig& c) -> bool& {
      return c.analysis.subtract_randoms;
    }));
    d.push_back(ikey("analysis_bootstrap_resamples", [](RunConfig& c) -> int& {
      return c.analysis.bootstrap_resamples;
    }));
    d.push_back({"analysis_bell_cases",
                 [](RunConfig& c, std::string_view v, size_t line) {
                   c.analysis.bell_case_ids =
                       parse_case_list(v, "analysis_bell_cases", 8, line);
                 },
                 [](const RunConfig& c) {
                   return format_case_list(c.analysis.bell_case_ids);
                 }});
    d.push_back({"analysis_wigner_cases",
                 [](RunConfig& c, std::string_view v, size_t line) {
                   c.analysis.wigner_case_ids =
                       parse_case_list(v, "analysis_wigner_cases", 6, line);
                 },
                 [](const RunConfig& c) {
                   return format_case_list(c.analysis.wigner_case_ids);
                 }});
    return d;
  }();
  return defs;
}

const KeyDef* find_key(std::string_view key) {
  for (const KeyDef& def : key_defs()) {
    if (def.key == key) return &def;
  }
  return nullptr;
}

}  // namespace

RunConfig parse_run_config(std::istream& in) {
  RunConfig cfg;
  std::set<std::string> seen;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view s(line);
    if (const auto hash = s.find('#'); hash != std::string_view::npos) {
      s = s.substr(0, hash);
    }
    s = trim(s);
    if (s.empty()) continue;

    const auto eq = s.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("expected key = value on line " +
                        std::to_string(line_no));
    }
    const std::string key(trim(s.substr(0, eq)));
    const std::string_view value = trim(s.substr(eq + 1));
    const KeyDef* def = find_key(key);
    if (!def) {
      throw ConfigError("unknown config key '" + key + "' (line " +
                        std::to_string(line_no) + ")");
    }
    if (!seen.insert(key).second) {
      throw ConfigError("config key '" + key + "' appears twice (line " +
                        std::to_string(line_no) + ")");
    }
    def->set(cfg, value, line_no);
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  return parse_run_config(in);
}

void apply_override(RunConfig& cfg, const std::string& assignment) {
  const std::string_view s = trim(assignment);
  const auto eq = s.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("override '" + assignment +
                      "' is not of the form key=value");
  }
  const std::string key(trim(s.substr(0, eq)));
  const std::string_view value = trim(s.substr(eq + 1));
  const KeyDef* def = find_key(key);
  if (!def) {
    throw ConfigError("unknown config key '" + key + "' in override");
  }
  def->set(cfg, value, 0);
}

std::vector<std::pair<std::string, std::string>> to_key_values(
    const RunConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> out;
  out.reserve(key_defs().size());
  for (const KeyDef& def : key_defs()) {
    out.emplace_back(def.key, def.get(cfg));
  }
  return out;
}

}  // namespace pairsim
