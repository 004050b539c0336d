// Command-line front end: solve instances, generate inputs (uniform random or
// the adversarial gap family), certify local optimality, and run benchmark
// manifests.
//
// Exit codes: 0 success, 1 bench row failed / certify found an improvement,
// 2 bad input or configuration, 3 search budget exhausted.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "setpack/aux_graph.hpp"
#include "setpack/errors.hpp"
#include "setpack/gap_construction.hpp"
#include "setpack/instance.hpp"
#include "setpack/local_search.hpp"
#include "setpack/oracle.hpp"
#include "setpack/report.hpp"

namespace {

using namespace setpack;

std::string fmt(double v, int prec) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  return buf;
}

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

// Everything one solver run needs besides the instance itself.
struct RunSpec {
  std::string mode = "color";  // naive | color | hs
  std::string family = "seeded";
  int t = 0;  // 0 = 4*ceil(log2 sets)+1
  long trials = 1000;
  uint64_t seed = 0;
  bool oracle = false;
  bool self_loops = true;
  int jobs = 1;
  int swap_size = 3;  // hs mode
};

RunReport run_spec(const std::string& path, const Instance& inst, const RunSpec& spec) {
  RunReport r;
  r.instance = path;
  r.digest = instance_digest(inst);
  r.mode = spec.mode;
  r.k = inst.k;
  r.sets = inst.num_sets();
  r.ground = inst.ground_size;
  r.t = spec.mode == "hs" ? 0
                          : (spec.t > 0 ? spec.t : default_improvement_size(inst.num_sets()));
  r.trials = spec.mode == "color" ? spec.trials : 0;
  r.seed = spec.seed;
  r.self_loops = spec.self_loops;
  r.family = spec.mode == "color" ? spec.family : "";
  r.jobs = spec.jobs;
  r.swap_size = spec.mode == "hs" ? spec.swap_size : 0;

  auto start = std::chrono::steady_clock::now();
  if (spec.mode == "hs") {
    r.greedy_size = greedy_maximalize(inst, Packing{}).size();
    r.packing_size = hurkens_schrijver_baseline(inst, spec.swap_size).size();
  } else {
    SearchConfig cfg;
    cfg.mode = spec.mode == "naive" ? SearchMode::NaiveEnumeration : SearchMode::ColorCoding;
    cfg.family = spec.family == "exhaustive" ? ColoringFamilyKind::ExhaustiveRelevant
                                             : ColoringFamilyKind::SeededRandom;
    cfg.t = spec.t;
    cfg.trials = spec.trials;
    cfg.seed = spec.seed;
    cfg.include_self_loops = spec.self_loops;
    cfg.jobs = spec.jobs;
    auto [packing, trace] = run_local_search(inst, cfg);
    r.packing_size = packing.size();
    r.greedy_size =
        trace.iterations.empty() ? packing.size() : trace.iterations.front().size_before;
    r.iterations = static_cast<long>(trace.iterations.size());
    r.colorings_tried = trace.total_colorings;
  }
  if (spec.oracle) {
    ExactPackingResult best = exact_max_packing(inst);
    r.optimum = best.packing.size();
    r.optimum_proven = best.proven_optimal;
    if (best.proven_optimal && r.packing_size > 0)
      r.ratio = static_cast<double>(best.packing.size()) / r.packing_size;
  }
  r.wall_ms = ms_since(start);
  return r;
}

struct SolveArgs {
  std::string path;
  RunSpec spec;
  std::string self_loops = "on";
  bool json = false;
  bool no_timing = false;
};

int cmd_solve(SolveArgs& a) {
  a.spec.self_loops = a.self_loops == "on";
  Instance inst = read_instance_file(a.path);
  RunReport r = run_spec(a.path, inst, a.spec);
  if (a.no_timing) r.wall_ms = 0.0;
  if (a.json)
    std::cout << report_to_json(r).dump() << '\n';
  else
    std::cout << report_to_text(r);
  return 0;
}

int cmd_generate_random(int k, int sets, int ground, uint64_t seed, std::string out) {
  if (out.empty()) out = "random-k" + std::to_string(k) + "-s" + std::to_string(sets) + ".sp";
  Instance inst = random_instance(k, sets, ground, seed);
  write_instance_file(inst, out);
  std::cout << "wrote " << out << "  (" << sets << " sets of size " << k << ", ground "
            << ground << ", digest " << instance_digest(inst) << ")\n";
  return 0;
}

int cmd_generate_gap(const GapParams& params, std::string out) {
  if (out.empty())
    out = "gap-k" + std::to_string(params.k) + "-n" + std::to_string(params.n) + ".sp";
  GapInstance gi = generate_gap_instance(params);
  write_instance_file(gi.instance, out);
  write_gap_metadata(gi, out + ".meta");
  std::cout << "wrote " << out << " and " << out << ".meta  (" << gi.blocks.size()
            << " blocks + " << gi.triples.size() << " triples, certified t=" << gi.certified_t
            << ", rejections " << gi.rejections << ")\n";
  return 0;
}

struct CertifyArgs {
  std::string path;
  int t = 0;
  int prefix = 0;
  std::string packing_spec;
  std::string self_loops = "on";
};

int cmd_certify(const CertifyArgs& args) {
  Instance inst = read_instance_file(args.path);
  Packing a;
  if (!args.packing_spec.empty()) {
    std::stringstream ss(args.packing_spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) continue;
      try {
        size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        a.ids.push_back(v);
      } catch (const std::logic_error&) {
        throw InvalidInputError("--packing: bad set id '" + tok + "'");
      }
    }
    std::sort(a.ids.begin(), a.ids.end());
  } else if (args.prefix > 0) {
    if (args.prefix > inst.num_sets())
      throw InvalidInputError("--prefix exceeds the number of sets");
    for (SetId s = 0; s < args.prefix; ++s) a.ids.push_back(s);
  } else {
    a = greedy_maximalize(inst, Packing{});
  }
  if (!is_packing(inst, a.ids))
    throw InvalidInputError("the selected sets do not form a packing");

  int t = args.t > 0 ? args.t : default_improvement_size(inst.num_sets());
  AuxMultigraph g = build_aux_graph(inst, a, args.self_loops == "on");
  std::optional<ImprovementCandidate> cand = naive_canonical_search(inst, a, g, t);
  if (!cand) {
    std::cout << "stable: the " << a.size() << "-set packing admits no canonical improvement"
              << " with at most " << t << " edges\n";
    return 0;
  }
  std::cout << "improvable: " << cand->edge_indices.size() << "-edge " << shape_name(cand->shape)
            << " covering " << cand->covered_vertices.size() << " packing sets\n";
  std::cout << "  drop:";
  for (VertexId v : cand->covered_vertices) std::cout << ' ' << g.vertices[v];
  std::cout << "\n  add: ";
  for (int e : cand->edge_indices) std::cout << ' ' << g.edges[e].label;
  std::cout << '\n';
  return 1;
}

struct BenchRow {
  std::string instance;
  std::string config;
  std::optional<RunReport> report;
  std::string error;
};

int cmd_bench(const std::string& manifest_path, int jobs, std::string out_path, bool no_timing) {
  std::ifstream in(manifest_path);
  if (!in) throw InvalidInputError("cannot open manifest: " + manifest_path);
  nlohmann::json m;
  try {
    m = nlohmann::json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInputError(std::string("manifest: ") + e.what());
  }

  const std::filesystem::path base = std::filesystem::path(manifest_path).parent_path();
  std::vector<std::string> instances;
  for (const auto& it : m.value("instances", nlohmann::json::array()))
    instances.push_back(it.get<std::string>());

  struct Cfg {
    std::string name;
    RunSpec spec;
  };
  std::vector<Cfg> configs;
  for (const auto& jc : m.value("configs", nlohmann::json::array())) {
    Cfg c;
    c.spec.mode = jc.value("mode", std::string("color"));
    if (c.spec.mode != "naive" && c.spec.mode != "color" && c.spec.mode != "hs")
      throw InvalidInputError("manifest: unknown mode '" + c.spec.mode + "'");
    c.spec.t = jc.value("t", 0);
    c.spec.trials = jc.value("trials", 1000L);
    c.spec.seed = jc.value("seed", static_cast<uint64_t>(0));
    c.spec.oracle = jc.value("oracle", false);
    c.spec.self_loops = jc.value("self_loops", true);
    c.spec.family = jc.value("family", std::string("seeded"));
    c.spec.swap_size = jc.value("swap_size", 3);
    c.spec.jobs = 1;  // rows are the unit of parallelism, keep each row serial
    c.name = jc.value("name", c.spec.mode + "#" + std::to_string(configs.size()));
    configs.push_back(std::move(c));
  }

  const int cols = static_cast<int>(configs.size());
  const int rows = static_cast<int>(instances.size()) * cols;
  std::vector<BenchRow> results(rows);

#ifdef _OPENMP
// rows are independent; costs vary wildly, so hand them out one at a time
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1, jobs)) if (jobs > 1)
#endif
  for (int i = 0; i < rows; ++i) {
    const std::string& ipath = instances[i / cols];
    const Cfg& cfg = configs[i % cols];
    BenchRow& row = results[i];
    row.instance = ipath;
    row.config = cfg.name;
    try {
      Instance inst = read_instance_file((base / ipath).string());
      RunReport r = run_spec(ipath, inst, cfg.spec);
      r.config = cfg.name;
      if (no_timing) r.wall_ms = 0.0;
      row.report = std::move(r);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  }

  size_t iw = 8, cw = 6;
  for (const auto& r : results) {
    iw = std::max(iw, r.instance.size());
    cw = std::max(cw, r.config.size());
  }
  std::ostringstream table;
  table << std::left << std::setw(static_cast<int>(cw)) << "config" << "  "
        << std::setw(static_cast<int>(iw)) << "instance" << std::right << std::setw(8)
        << "packing" << std::setw(9) << "optimum" << std::setw(9) << "ratio" << std::setw(11)
        << "colorings" << std::setw(11) << "wall_ms" << "  status\n";
  for (const auto& row : results) {
    table << std::left << std::setw(static_cast<int>(cw)) << row.config << "  "
          << std::setw(static_cast<int>(iw)) << row.instance << std::right;
    if (row.report) {
      const RunReport& r = *row.report;
      table << std::setw(8) << r.packing_size;
      table << std::setw(9) << (r.optimum ? std::to_string(*r.optimum) : std::string("-"));
      table << std::setw(9) << (r.ratio ? fmt(*r.ratio, 4) : std::string("-"));
      table << std::setw(11) << r.colorings_tried;
      table << std::setw(11) << fmt(r.wall_ms, 2);
      table << "  ok\n";
    } else {
      table << std::setw(8) << "-" << std::setw(9) << "-" << std::setw(9) << "-" << std::setw(11)
            << "-" << std::setw(11) << "-" << "  FAILED: " << row.error << '\n';
    }
  }

  bool any_failed = false;
  table << '\n';
  for (int c = 0; c < cols; ++c) {
    int ok = 0, failed = 0, proven = 0;
    double rmin = 0, rmax = 0, rsum = 0;
    for (int i = c; i < rows; i += cols) {
      const BenchRow& row = results[i];
      if (!row.report) {
        ++failed;
        continue;
      }
      ++ok;
      if (row.report->ratio) {
        double v = *row.report->ratio;
        if (proven == 0 || v < rmin) rmin = v;
        if (proven == 0 || v > rmax) rmax = v;
        rsum += v;
        ++proven;
      }
    }
    any_failed = any_failed || failed > 0;
    table << configs[c].name << ": " << ok << " ok, " << failed << " failed";
    if (proven > 0)
      table << "; ratio over " << proven << " proven rows: min " << fmt(rmin, 4) << " mean "
            << fmt(rsum / proven, 4) << " max " << fmt(rmax, 4);
    table << '\n';
  }
  std::cout << table.str();

  if (out_path.empty()) out_path = manifest_path + ".jsonl";
  std::ofstream out(out_path);
  if (!out) throw InvalidInputError("cannot open output file: " + out_path);
  for (const auto& row : results) {
    if (row.report) {
      nlohmann::ordered_json j = report_to_json(*row.report);
      j["status"] = "ok";
      out << j.dump() << '\n';
    } else {
      nlohmann::ordered_json j;
      j["instance"] = row.instance;
      j["config"] = row.config;
      j["status"] = "error";
      j["error"] = row.error;
      out << j.dump() << '\n';
    }
  }
  std::cout << "wrote " << results.size() << " rows to " << out_path << '\n';
  return any_failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-set packing: local search with color-coded improvement detection"};
  app.require_subcommand(1);
  int rc = 0;

  auto sargs = std::make_shared<SolveArgs>();
  CLI::App* solve = app.add_subcommand("solve", "run local search on an instance file");
  solve->add_option("instance", sargs->path, "instance file")->required();
  solve->add_option("--mode", sargs->spec.mode, "improvement search: naive, color, or hs")
      ->check(CLI::IsMember({"naive", "color", "hs"}))
      ->capture_default_str();
  solve->add_option("--t", sargs->spec.t, "improvement size cap (0 = 4*ceil(log2 sets)+1)");
  solve->add_option("--trials", sargs->spec.trials, "colorings per improvement search")
      ->capture_default_str();
  solve->add_option("--seed", sargs->spec.seed, "rng seed")->capture_default_str();
  solve->add_flag("--oracle", sargs->spec.oracle, "also compute the exact optimum and ratio");
  solve->add_option("--jobs", sargs->spec.jobs, "threads for the coloring trial pool")
      ->capture_default_str();
  solve->add_option("--self-loops", sargs->self_loops, "self-loops in the conflict graph")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
  solve->add_option("--family", sargs->spec.family, "coloring family in color mode")
      ->check(CLI::IsMember({"seeded", "exhaustive"}))
      ->capture_default_str();
  solve->add_option("--swap", sargs->spec.swap_size, "swap size bound in hs mode")
      ->capture_default_str();
  solve->add_flag("--json", sargs->json, "print the report as one JSON line");
  solve->add_flag("--no-timing", sargs->no_timing, "zero wall_ms for byte-stable output");
  solve->callback([&rc, sargs] { rc = cmd_solve(*sargs); });

  CLI::App* gen = app.add_subcommand("generate", "write instance files");
  gen->require_subcommand(1);

  auto rnd = std::make_shared<std::tuple<int, int, int, uint64_t, std::string>>(3, 20, 30, 0, "");
  CLI::App* grandom = gen->add_subcommand("random", "uniform random k-subsets");
  grandom->add_option("out", std::get<4>(*rnd), "output file (default derived from params)");
  grandom->add_option("--k", std::get<0>(*rnd), "set size")->capture_default_str();
  grandom->add_option("--sets", std::get<1>(*rnd), "number of sets")->capture_default_str();
  grandom->add_option("--ground", std::get<2>(*rnd), "ground set size")->capture_default_str();
  grandom->add_option("--seed", std::get<3>(*rnd), "rng seed")->capture_default_str();
  grandom->callback([&rc, rnd] {
    rc = cmd_generate_random(std::get<0>(*rnd), std::get<1>(*rnd), std::get<2>(*rnd),
                             std::get<3>(*rnd), std::get<4>(*rnd));
  });

  auto gap = std::make_shared<std::pair<GapParams, std::string>>();
  CLI::App* ggap = gen->add_subcommand("gap", "blocks-vs-triples instance with locality gap k/3");
  ggap->add_option("out", gap->second, "output file (default derived from params)");
  ggap->add_option("--k", gap->first.k, "set size, >= 3")->capture_default_str();
  ggap->add_option("--n", gap->first.n, "scale: 3n blocks, kn triples")->capture_default_str();
  ggap->add_option("--t", gap->first.t, "improvement size to certify against")
      ->capture_default_str();
  ggap->add_option("--seed", gap->first.seed, "rng seed")->capture_default_str();
  ggap->add_option("--attempts", gap->first.max_attempts, "rejection sampling budget")
      ->capture_default_str();
  ggap->add_option("--jobs", gap->first.jobs, "threads for stability certification")
      ->capture_default_str();
  ggap->callback([&rc, gap] { rc = cmd_generate_gap(gap->first, gap->second); });

  auto cargs = std::make_shared<CertifyArgs>();
  CLI::App* certify =
      app.add_subcommand("certify", "exhaustively check a packing for canonical improvements");
  certify->add_option("instance", cargs->path, "instance file")->required();
  certify->add_option("--t", cargs->t, "improvement size cap (0 = 4*ceil(log2 sets)+1)");
  CLI::Option* opt_prefix =
      certify->add_option("--prefix", cargs->prefix, "use the first N sets as the packing");
  certify->add_option("--packing", cargs->packing_spec, "comma-separated set ids")
      ->excludes(opt_prefix);
  certify->add_option("--self-loops", cargs->self_loops, "self-loops in the conflict graph")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
  certify->callback([&rc, cargs] { rc = cmd_certify(*cargs); });

  auto bargs = std::make_shared<std::tuple<std::string, int, std::string, bool>>("", 1, "", false);
  CLI::App* bench = app.add_subcommand("bench", "run every (instance, config) pair of a manifest");
  bench->add_option("manifest", std::get<0>(*bargs),
                    "JSON manifest with \"instances\" and \"configs\" arrays")
      ->required();
  bench->add_option("--jobs", std::get<1>(*bargs), "rows run concurrently")->capture_default_str();
  bench->add_option("--out", std::get<2>(*bargs), "JSONL output path (default <manifest>.jsonl)");
  bench->add_flag("--no-timing", std::get<3>(*bargs), "zero wall_ms for byte-stable output");
  bench->callback([&rc, bargs] {
    rc = cmd_bench(std::get<0>(*bargs), std::get<1>(*bargs), std::get<2>(*bargs),
                   std::get<3>(*bargs));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const BudgetError& e) {
    std::cerr << "budget exhausted: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return rc;
}
