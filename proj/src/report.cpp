#include "setpack/report.hpp"

#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace setpack {

namespace {

std::string fmt(double v, int prec) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  return buf;
}

}  // namespace

nlohmann::ordered_json report_to_json(const RunReport& r) {
  nlohmann::ordered_json j;
  j["instance"] = r.instance;
  j["digest"] = r.digest;
  j["config"] = r.config;
  j["mode"] = r.mode;
  j["k"] = r.k;
  j["sets"] = r.sets;
  j["ground"] = r.ground;
  j["t"] = r.t;
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["self_loops"] = r.self_loops;
  j["family"] = r.family;
  j["jobs"] = r.jobs;
  j["swap_size"] = r.swap_size;
  j["greedy_size"] = r.greedy_size;
  j["packing_size"] = r.packing_size;
  if (r.optimum)
    j["optimum"] = *r.optimum;
  else
    j["optimum"] = nullptr;
  j["optimum_proven"] = r.optimum_proven;
  if (r.ratio)
    j["ratio"] = *r.ratio;
  else
    j["ratio"] = nullptr;
  j["iterations"] = r.iterations;
  j["colorings_tried"] = r.colorings_tried;
  j["wall_ms"] = r.wall_ms;
  return j;
}

std::string report_to_text(const RunReport& r) {
  std::ostringstream out;
  auto line = [&out](const std::string& key, const std::string& val) {
    out << std::left << std::setw(12) << key << ' ' << val << '\n';
  };
  line("instance", r.instance.empty() ? "<stdin>" : r.instance);
  line("digest", r.digest);
  if (!r.config.empty()) line("config", r.config);
  std::string mode = r.mode;
  if (r.mode == "color")
    mode += " (family " + r.family + ", trials " + std::to_string(r.trials) + ", jobs " +
            std::to_string(r.jobs) + ")";
  else if (r.mode == "hs")
    mode += " (swap size " + std::to_string(r.swap_size) + ")";
  line("mode", mode);
  line("shape", std::to_string(r.sets) + " sets of size " + std::to_string(r.k) + ", ground " +
                    std::to_string(r.ground));
  line("t", std::to_string(r.t));
  line("seed", std::to_string(r.seed));
  line("self-loops", r.self_loops ? "on" : "off");
  line("greedy", std::to_string(r.greedy_size));
  line("packing", std::to_string(r.packing_size));
  if (r.optimum)
    line("optimum", std::to_string(*r.optimum) + (r.optimum_proven ? "" : " (not proven)"));
  if (r.ratio) line("ratio", fmt(*r.ratio, 4));
  line("iterations", std::to_string(r.iterations));
  if (r.mode == "color") line("colorings", std::to_string(r.colorings_tried));
  line("wall", fmt(r.wall_ms, 2) + " ms");
  return out.str();
}

void write_report_lines(const std::vector<RunReport>& rows, std::ostream& out) {
  for (const auto& r : rows) out << report_to_json(r).dump() << '\n';
}

}  // namespace setpack
