#pragma once

#include <fstream>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "pairsim/event.hpp"
#include "pairsim/simulate.hpp"

namespace pairsim {

// Headered CSV, one record per pair:
//   # pair-events v1
//   # report n_events=... n_hydrogen=... ... seed=...
//   event_id,source_tag,t1_ns,...[,hidden_azimuth_deg,bunch_offset]
// Floats are written round-trip exact, so write -> read -> write is
// byte-stable. Truth columns appear iff the file was written with truth
// output; analysis never reads them.
inline constexpr const char* kEventSchema = "# pair-events v1";

struct EventFileHeader {
  bool has_truth = false;
  bool has_report = false;
  GenerationReport report;
};

void write_event_header(std::ostream& os, bool truth,
                        const GenerationReport* report);
void write_event_row(std::ostream& os, const PairEvent& ev, bool truth);
void write_event_file(const std::string& path, std::span<const PairEvent> events,
                      bool truth, const GenerationReport* report);

// Streaming reader so analysis never needs the whole file in memory.
class EventFileReader {
 public:
  explicit EventFileReader(const std::string& path);

  const EventFileHeader& header() const { return header_; }

  // Appends up to max_n events to out; returns how many were read. Zero
  // means end of file. Malformed rows raise DataError naming the line and
  // column.
  std::size_t read_chunk(std::vector<PairEvent>& out, std::size_t max_n);

 private:
  std::ifstream in_;
  std::string path_;
  std::size_t line_no_ = 0;
  EventFileHeader header_;
};

std::vector<PairEvent> read_event_file(const std::string& path,
                                       EventFileHeader* header);

}  // namespace pairsim
