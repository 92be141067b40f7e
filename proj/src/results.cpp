#include "pairsim/results.hpp"

#include <fstream>
#include <json.hpp>

#include "pairsim/errors.hpp"
#include "pairsim/serialize.hpp"

namespace pairsim {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json inequality_block(const std::vector<InequalityResult>& results) {
  ordered_json arr = ordered_json::array();
  for (const InequalityResult& r : results) {
    ordered_json j;
    j["case_id"] = r.case_id;
    j["measured"] = r.measured;
    j["sigma"] = r.sigma;
    j["prediction_qm"] = r.prediction_qm;
    j["classical_limit"] = r.classical_limit;
    j["verdict"] = to_string(r.verdict);
    arr.push_back(std::move(j));
  }
  return arr;
}

ordered_json spectrum_block(const Histogram& h) {
  ordered_json j;
  j["entries"] = h.total_in_range();
  j["underflow"] = h.underflow();
  j["overflow"] = h.overflow();
  j["bin_width"] = h.width();
  if (h.total_in_range() > 0) j["peak_center"] = h.argmax_center();
  return j;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DataError("cannot open '" + path + "' for writing");
  return os;
}

void write_inequality_csv(const std::string& path,
                          const std::vector<InequalityResult>& results) {
  std::ofstream os = open_out(path);
  os << "case_id,measured,sigma,qm,limit\n";
  for (const InequalityResult& r : results) {
    os << r.case_id << "," << format_double(r.measured) << ","
       << format_double(r.sigma) << "," << format_double(r.prediction_qm)
       << "," << format_double(r.classical_limit) << "\n";
  }
  if (!os) throw DataError("failed while writing '" + path + "'");
}

}  // namespace

std::string results_document(const RunConfig& cfg, const AnalysisOutput& out) {
  ordered_json doc;
  doc["schema"] = "pairsim-results v1";
  doc["empty_sample"] = out.empty_sample;

  ordered_json config;
  for (const auto& [key, value] : to_key_values(cfg)) config[key] = value;
  doc["config"] = std::move(config);

  if (out.has_generation) {
    ordered_json g;
    g["n_events"] = out.generation.n_events;
    g["n_hydrogen"] = out.generation.n_hydrogen;
    g["n_carbon"] = out.generation.n_carbon;
    g["n_background"] = out.generation.n_background;
    g["n_random"] = out.generation.n_random;
    g["regenerations"] = out.generation.regenerations;
    g["seed"] = out.generation.seed;
    doc["generation"] = std::move(g);
  }

  ordered_json sel;
  sel["n_input"] = out.selection.n_input;
  sel["fail_momentum_window"] = out.selection.fail_momentum_window;
  sel["fail_relative_ke"] = out.selection.fail_relative_ke;
  sel["n_selected"] = out.selection.n_selected;
  sel["fail_scatter_band"] = out.fail_scatter_band;
  sel["n_true_coincidence"] = out.n_true;
  sel["n_random_coincidence"] = out.n_random;
  sel["n_outside_window"] = out.n_outside;
  doc["selection"] = std::move(sel);

  ordered_json sub;
  sub["enabled"] = out.subtraction_enabled;
  sub["true_teeth"] = out.subtraction.true_teeth;
  sub["sideband_teeth"] = out.subtraction.sideband_teeth;
  sub["weight"] = out.subtraction.weight;
  doc["subtraction"] = std::move(sub);

  if (!out.empty_sample) {
    ordered_json cal;
    cal["source"] = cfg.analysis.a_source == ASource::SelfCalibrated
                        ? "self_calibrated"
                        : "fixed";
    cal["self_calibration_ok"] = out.self_calibration.ok;
    cal["a_est"] = out.self_calibration.a_est;
    cal["sigma_a"] = out.self_calibration.sigma_a;
    cal["mean_cos"] = out.self_calibration.mean_cos;
    cal["sigma_mean_cos"] = out.self_calibration.sigma_mean;
    cal["n_entries"] = out.self_calibration.n_entries;
    cal["fell_back_to_fixed"] = out.calibration_fell_back;
    cal["a_used"] = out.a_used;
    doc["calibration"] = std::move(cal);

    ordered_json corr = ordered_json::array();
    for (const CorrelationRecord& rec : out.correlations) {
      const CorrelationEstimate& e = rec.estimate;
      ordered_json j;
      j["axis_a_deg"] = e.axis_a.angle_deg;
      j["axis_b_deg"] = e.axis_b.angle_deg;
      j["e_value"] = e.e_value;
      j["sigma"] = e.sigma;
      if (rec.has_bootstrap) j["bootstrap_sigma"] = rec.bootstrap_sigma;
      j["raw_moment"] = e.raw_moment;
      j["n_pp"] = e.counts[0];
      j["n_pm"] = e.counts[1];
      j["n_mp"] = e.counts[2];
      j["n_mm"] = e.counts[3];
      j["sum_weight"] = e.sum_weight;
      j["n_effective"] = e.n_effective;
      j["n_events"] = e.n_events;
      corr.push_back(std::move(j));
    }
    doc["correlations"] = std::move(corr);
    doc["bell"] = inequality_block(out.bell);
    doc["wigner"] = inequality_block(out.wigner);
  }

  ordered_json spectra;
  spectra["energy_sum_mev"] = spectrum_block(out.energy_sum);
  spectra["dt_ns"] = spectrum_block(out.dt);
  doc["spectra"] = std::move(spectra);

  return doc.dump(2) + "\n";
}

void write_run_outputs(const std::string& prefix, const RunConfig& cfg,
                       const AnalysisOutput& out) {
  {
    std::ofstream os = open_out(prefix + ".json");
    os << results_document(cfg, out);
    if (!os) throw DataError("failed while writing '" + prefix + ".json'");
  }
  {
    std::ofstream os = open_out(prefix + "_energy_sum.csv");
    out.energy_sum.write_csv(os, "energy_sum_mev");
  }
  {
    std::ofstream os = open_out(prefix + "_dt.csv");
    out.dt.write_csv(os, "dt_ns");
  }
  write_inequality_csv(prefix + "_bell.csv", out.bell);
  write_inequality_csv(prefix + "_wigner.csv", out.wigner);
}

void emit_reference_tables(const std::string& dir) {
  const std::string base = dir.empty() ? std::string(".") : dir;
  {
    std::ofstream os = open_out(base + "/bell_reference.csv");
    os << "case_id,a_deg,b_deg,a2_deg,b2_deg,qm,limit,experiment,"
          "experiment_sigma\n";
    for (const BellCase& c : bell_cases()) {
      os << c.id << "," << format_double(c.a_deg) << ","
         << format_double(c.b_deg) << "," << format_double(c.a2_deg) << ","
         << format_double(c.b2_deg) << "," << format_double(c.qm_prediction)
         << "," << format_double(BellCase::kLimit) << ","
         << format_double(c.experiment) << ","
         << format_double(c.experiment_sigma) << "\n";
    }
    if (!os) throw DataError("failed while writing bell_reference.csv");
  }
  {
    std::ofstream os = open_out(base + "/wigner_reference.csv");
    os << "case_id,a_deg,b_deg,c_deg,qm,limit,experiment,experiment_sigma\n";
    for (const WignerCase& c : wigner_cases()) {
      os << c.id << "," << format_double(c.a_deg) << ","
         << format_double(c.b_deg) << "," << format_double(c.c_deg) << ","
         << format_double(
                wigner_prediction_qm(axis_separation_deg(c.a_deg, c.c_deg)))
         << "," << format_double(WignerCase::kLimit) << ","
         << format_double(c.experiment) << ","
         << format_double(c.experiment_sigma) << "\n";
    }
    if (!os) throw DataError("failed while writing wigner_reference.csv");
  }
}

}  // namespace pairsim
