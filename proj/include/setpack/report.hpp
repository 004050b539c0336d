#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace setpack {

// One solver run flattened for logs.  JSON field order is fixed so identical
// runs serialize to identical bytes; wall_ms is the only field allowed to
// differ between runs with the same seed and config.
struct RunReport {
  std::string instance;
  std::string digest;
  std::string config;  // bench row label, empty for direct runs
  std::string mode;    // naive | color | hs
  int k = 0;
  int sets = 0;
  int ground = 0;
  int t = 0;          // improvement size cap actually used
  long trials = 0;    // color mode only
  uint64_t seed = 0;
  bool self_loops = true;
  std::string family;  // seeded | exhaustive, color mode only
  int jobs = 1;
  int swap_size = 0;  // hs mode only
  int greedy_size = 0;
  int packing_size = 0;
  std::optional<long> optimum;  // best value the exact solver reached
  bool optimum_proven = false;  // that value is the true optimum
  std::optional<double> ratio;  // optimum / packing_size, proven runs only
  long iterations = 0;
  long colorings_tried = 0;
  double wall_ms = 0.0;
};

nlohmann::ordered_json report_to_json(const RunReport& r);
std::string report_to_text(const RunReport& r);

// One JSON object per line, pipeline-friendly.
void write_report_lines(const std::vector<RunReport>& rows, std::ostream& out);

}  // namespace setpack
