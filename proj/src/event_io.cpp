#include "pairsim/event_io.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "pairsim/errors.hpp"
#include "pairsim/serialize.hpp"

namespace pairsim {

namespace {

const char* const kBaseColumns[] = {
    "event_id", "source_tag", "t1_ns", "t2_ns", "e1", "px1",
    "py1",      "pz1",        "e2",    "px2",   "py2", "pz2",
    "th1_deg",  "phi1_deg",   "th2_deg", "phi2_deg"};
constexpr int kNBase = 16;
const char* const kTruthColumns[] = {"hidden_azimuth_deg", "bunch_offset"};

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      fields.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return fields;
}

}  // namespace

void write_event_header(std::ostream& os, bool truth,
                        const GenerationReport* report) {
  os << kEventSchema << "\n";
  if (report) {
    os << "# report n_events=" << format_u64(report->n_events)
       << " n_hydrogen=" << format_u64(report->n_hydrogen)
       << " n_carbon=" << format_u64(report->n_carbon)
       << " n_background=" << format_u64(report->n_background)
       << " n_random=" << format_u64(report->n_random)
       << " regenerations=" << format_u64(report->regenerations)
       << " seed=" << format_u64(report->seed) << "\n";
  }
  for (int i = 0; i < kNBase; ++i) {
    os << (i ? "," : "") << kBaseColumns[i];
  }
  if (truth) {
    os << "," << kTruthColumns[0] << "," << kTruthColumns[1];
  }
  os << "\n";
}

void write_event_row(std::ostream& os, const PairEvent& ev, bool truth) {
  os << format_u64(ev.event_id) << ',' << to_string(ev.channel) << ','
     << format_double(ev.t1_ns) << ',' << format_double(ev.t2_ns) << ','
     << format_double(ev.p1.e) << ',' << format_double(ev.p1.px) << ','
     << format_double(ev.p1.py) << ',' << format_double(ev.p1.pz) << ','
     << format_double(ev.p2.e) << ',' << format_double(ev.p2.px) << ','
     << format_double(ev.p2.py) << ',' << format_double(ev.p2.pz) << ','
     << format_double(ev.theta1_deg) << ',' << format_double(ev.phi1_deg)
     << ',' << format_double(ev.theta2_deg) << ','
     << format_double(ev.phi2_deg);
  if (truth) {
    const double azm = ev.hidden.kind == HiddenState::Kind::PolarizationAzimuth
                           ? ev.hidden.azimuth_deg
                           : -1.0;
    os << ',' << format_double(azm) << ',' << std::to_string(ev.bunch_offset);
  }
  os << '\n';
}

void write_event_file(const std::string& path,
                      std::span<const PairEvent> events, bool truth,
                      const GenerationReport* report) {
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    throw DataError("cannot open '" + path + "' for writing");
  }
  write_event_header(os, truth, report);
  for (const PairEvent& ev : events) {
    write_event_row(os, ev, truth);
  }
  if (!os) {
    throw DataError("write to '" + path + "' failed");
  }
}

EventFileReader::EventFileReader(const std::string& path)
    : in_(path, std::ios::binary), path_(path) {
  if (!in_) {
    throw DataError("cannot open event file '" + path + "'");
  }
  std::string line;
  if (!std::getline(in_, line)) {
    throw DataError("event file '" + path + "' is empty");
  }
  ++line_no_;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kEventSchema) {
    if (line.rfind("# pair-events v", 0) == 0) {
      throw DataError("event file declares schema '" + line.substr(2) +
                      "'; this build reads 'pair-events v1'");
    }
    throw DataError("'" + path + "' is not a pair-events file (line 1)");
  }

  while (std::getline(in_, line)) {
    ++line_no_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind("# report ", 0) == 0) {
      header_.has_report = true;
      std::stringstream ss(line.substr(9));
      std::string item;
      while (ss >> item) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) {
          throw DataError("malformed report entry '" + item + "' (line " +
                          std::to_string(line_no_) + ")");
        }
        const std::string key = item.substr(0, eq);
        const std::string_view value = std::string_view(item).substr(eq + 1);
        std::uint64_t* dst = nullptr;
        if (key == "n_events") dst = &header_.report.n_events;
        else if (key == "n_hydrogen") dst = &header_.report.n_hydrogen;
        else if (key == "n_carbon") dst = &header_.report.n_carbon;
        else if (key == "n_background") dst = &header_.report.n_background;
        else if (key == "n_random") dst = &header_.report.n_random;
        else if (key == "regenerations") dst = &header_.report.regenerations;
        else if (key == "seed") dst = &header_.report.seed;
        if (!dst) {
          throw DataError("unknown report field '" + key + "' (line " +
                          std::to_string(line_no_) + ")");
        }
        *dst = parse_u64(value, "report " + key, line_no_);
      }
      continue;
    }
    // Column header line.
    const auto cols = split_csv(line);
    const bool truth = cols.size() == static_cast<std::size_t>(kNBase + 2);
    if (!truth && cols.size() != static_cast<std::size_t>(kNBase)) {
      throw DataError("expected " + std::to_string(kNBase) + " or " +
                      std::to_string(kNBase + 2) + " columns, found " +
                      std::to_string(cols.size()) + " (line " +
                      std::to_string(line_no_) + ")");
    }
    for (int i = 0; i < kNBase; ++i) {
      if (cols[static_cast<std::size_t>(i)] != kBaseColumns[i]) {
        throw DataError("column " + std::to_string(i + 1) + ": expected '" +
                        kBaseColumns[i] + "', found '" +
                        std::string(cols[static_cast<std::size_t>(i)]) +
                        "' (line " + std::to_string(line_no_) + ")");
      }
    }
    if (truth) {
      for (int i = 0; i < 2; ++i) {
        if (cols[static_cast<std::size_t>(kNBase + i)] != kTruthColumns[i]) {
          throw DataError(
              "column " + std::to_string(kNBase + i + 1) + ": expected '" +
              kTruthColumns[i] + "', found '" +
              std::string(cols[static_cast<std::size_t>(kNBase + i)]) +
              "' (line " + std::to_string(line_no_) + ")");
        }
      }
    }
    header_.has_truth = truth;
    return;
  }
  throw DataError("event file '" + path + "' ends before the column header");
}

std::size_t EventFileReader::read_chunk(std::vector<PairEvent>& out,
                                        std::size_t max_n) {
  std::size_t n_read = 0;
  std::string line;
  while (n_read < max_n && std::getline(in_, line)) {
    ++line_no_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    const auto fields = split_csv(line);
    const std::size_t expected =
        static_cast<std::size_t>(kNBase) + (header_.has_truth ? 2 : 0);
    if (fields.size() != expected) {
      throw DataError("expected " + std::to_string(expected) +
                      " fields, found " + std::to_string(fields.size()) +
                      " (line " + std::to_string(line_no_) + ")");
    }

    PairEvent ev;
    ev.event_id = parse_u64(fields[0], "event_id", line_no_);
    ev.channel = channel_from_string(std::string(fields[1]));
    const auto num = [&](int idx, const char* name) {
      const double v =
          parse_double(fields[static_cast<std::size_t>(idx)], name, line_no_);
      if (!std::isfinite(v)) {
        throw DataError(std::string("non-finite value for ") + name +
                        " (line " + std::to_string(line_no_) + ")");
      }
      return v;
    };
    ev.t1_ns = num(2, "t1_ns");
    ev.t2_ns = num(3, "t2_ns");
    ev.p1 = {num(4, "e1"), num(5, "px1"), num(6, "py1"), num(7, "pz1")};
    ev.p2 = {num(8, "e2"), num(9, "px2"), num(10, "py2"), num(11, "pz2")};
    ev.theta1_deg = num(12, "th1_deg");
    ev.phi1_deg = num(13, "phi1_deg");
    ev.theta2_deg = num(14, "th2_deg");
    ev.phi2_deg = num(15, "phi2_deg");
    if (header_.has_truth) {
      const double azm = num(kNBase, "hidden_azimuth_deg");
      ev.bunch_offset = static_cast<int>(
          parse_i64(fields[kNBase + 1], "bunch_offset", line_no_));
      if (azm >= 0.0) {
        ev.hidden = {HiddenState::Kind::PolarizationAzimuth, azm};
      } else if (ev.channel == Channel::Hydrogen ||
                 ev.channel == Channel::Carbon) {
        ev.hidden = {HiddenState::Kind::Entangled, -1.0};
      } else {
        ev.hidden = {HiddenState::Kind::Unpolarized, -1.0};
      }
    }
    out.push_back(ev);
    ++n_read;
  }
  return n_read;
}

std::vector<PairEvent> read_event_file(const std::string& path,
                                       EventFileHeader* header) {
  EventFileReader reader(path);
  std::vector<PairEvent> events;
  while (reader.read_chunk(events, 65536) > 0) {
  }
  if (header) *header = reader.header();
  return events;
}

}  // namespace pairsim
