// Acceptance gate: every release criterion below runs against the library and
// prints exactly one PASS/FAIL line.  The process exits nonzero if any line
// fails, so `ctest` treats the whole gate as one test.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "setpack/aux_graph.hpp"
#include "setpack/bigmath.hpp"
#include "setpack/binocular.hpp"
#include "setpack/color_coding.hpp"
#include "setpack/gap_construction.hpp"
#include "setpack/instance.hpp"
#include "setpack/local_search.hpp"
#include "setpack/multigraph.hpp"
#include "setpack/oracle.hpp"
#include "setpack/report.hpp"
#include "setpack/rng.hpp"

using namespace setpack;

namespace {

struct Gate {
  int failed = 0;

  void run(int index, const std::string& name, const std::function<std::string()>& body) {
    auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool threw = false;
    try {
      detail = body();
    } catch (const std::exception& e) {
      threw = true;
      detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = !threw && detail.empty();
    if (!ok) ++failed;
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << index << ": " << name;
    if (!ok) std::cout << " -- " << detail;
    std::cout << "  [" << std::fixed << std::setprecision(1) << secs << "s]\n" << std::defaultfloat;
  }
};

bool is_maximal(const Instance& inst, const Packing& a) {
  for (SetId x = 0; x < inst.num_sets(); ++x) {
    if (a.contains(x)) continue;
    std::vector<SetId> ids = a.ids;
    ids.push_back(x);
    std::sort(ids.begin(), ids.end());
    if (is_packing(inst, ids)) return false;
  }
  return true;
}

// ---- criterion 1: local search vs exact optimum ---------------------------

std::string check_ratio_bound() {
  for (int i = 0; i < 200; ++i) {
    const int sets = 8 + i % 7;
    const int ground = 9 + (i * 7) % 10;
    Instance in = random_instance(3, sets, ground, Rng::derive(42, i));
    SearchConfig cfg;
    cfg.mode = SearchMode::NaiveEnumeration;  // t defaults to 4*ceil(log2 sets)+1
    auto [packing, trace] = run_local_search(in, cfg);
    ExactPackingResult opt = exact_max_packing(in);
    if (!opt.proven_optimal) return "instance " + std::to_string(i) + ": optimum not proven";
    // |OPT| <= ceil((k+2)/3 * |A|) with k = 3
    if (3 * opt.packing.size() > 5 * packing.size() + 2) {
      return "instance " + std::to_string(i) + ": opt " + std::to_string(opt.packing.size()) +
             " vs packing " + std::to_string(packing.size());
    }
  }
  return "";
}

// ---- criterion 2: colorful-hit frequency of a planted improvement ---------

std::string check_colorful_probability() {
  Instance in = pad_to_k({{0, 1, 2}, {0, 3, 4}, {1, 5, 6}}, 3);
  Packing a{{0}};
  AuxMultigraph g = build_aux_graph(in, a, true);
  const int k = 3, t = 3;
  const long trials = 100000;
  long hits = 0;
  for (long i = 0; i < trials; ++i) {
    Coloring c = random_coloring(in.ground_size, k * t, Rng::derive(271828, i));
    if (search_canonical(in, a, g, c, t)) ++hits;
  }
  BigRat p = colorful_probability(k * t, k, 2);  // the improvement has 2 edges
  const double pd = mpq_class(p).get_d();
  const double sigma = std::sqrt(pd * (1 - pd) * trials);
  if (std::abs(hits - pd * trials) > 3 * sigma) {
    return "hits " + std::to_string(hits) + " expected " + std::to_string(pd * trials) +
           " sigma " + std::to_string(sigma);
  }
  // p > e^{-kt}, certified with a rational lower bound on e
  BigRat scaled = p;
  for (int i = 0; i < k * t; ++i) scaled *= euler_lower_bound();
  if (!(scaled > 1)) return "rational bound p > e^{-9} failed";
  return "";
}

// ---- criterion 3: dp table vs walk enumeration -----------------------------

struct SynthGraph {
  AuxMultigraph g;
  std::vector<std::vector<ElementId>> labels;
  int ground = 0;
};

SynthGraph synth_graph(int n, int m, int k, int pool, Rng& rng) {
  SynthGraph s;
  s.g.vertices.resize(n);
  for (int i = 0; i < n; ++i) s.g.vertices[i] = i;
  s.g.incident.assign(n, {});
  s.ground = pool;
  for (int e = 0; e < m; ++e) {
    std::set<ElementId> lab;
    while (static_cast<int>(lab.size()) < k) lab.insert(static_cast<ElementId>(rng.below(pool)));
    AuxEdge edge;
    edge.label = e;
    edge.u = static_cast<int>(rng.below(n));
    edge.v = static_cast<int>(rng.below(n));
    s.g.edges.push_back(edge);
    s.g.incident[edge.u].push_back(e);
    if (edge.v != edge.u) s.g.incident[edge.v].push_back(e);
    s.labels.emplace_back(lab.begin(), lab.end());
  }
  return s;
}

std::string check_dp_oracle() {
  Rng rng(333);
  for (int iter = 0; iter < 500; ++iter) {
    const int n = 2 + static_cast<int>(rng.below(7));
    const int m = 1 + static_cast<int>(rng.below(14));
    const int k = 2 + static_cast<int>(rng.below(2));
    const int t = 2 + static_cast<int>(rng.below(3));
    SynthGraph s = synth_graph(n, m, k, k * (t + 2), rng);
    Coloring c = random_coloring(s.ground, k * t, rng.next());
    auto info = color_edges<Mask64>(s.labels, k, c);
    DpTable<Mask64> dp = build_dp(s.g, info, t);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        for (int len = 0; len <= t; ++len) {
          std::set<Mask64> want;
          for (const auto& w : enumerate_colorful_walks(s.g, s.labels, k, c, a, b, len)) {
            Mask64 used;
            for (int e : w) used = used | info.mask[e];
            want.insert(used);
          }
          const auto& cell = dp.masks(a, b, len);
          std::set<Mask64> got(cell.begin(), cell.end());
          if (got != want) {
            return "mismatch at graph " + std::to_string(iter) + " cell (" + std::to_string(a) +
                   "," + std::to_string(b) + "," + std::to_string(len) + ")";
          }
        }
      }
    }
  }
  return "";
}

// ---- criterion 4: binocular extraction bound -------------------------------

std::string check_binocular_bound() {
  Rng rng(444);
  for (int iter = 0; iter < 1000; ++iter) {
    const int n = 4 + static_cast<int>(rng.below(253));
    Multigraph g;
    g.num_vertices = n;
    for (int e = 0; e < 2 * n; ++e)
      g.add_edge(static_cast<int>(rng.below(n)), static_cast<int>(rng.below(n)));
    Binocular b = find_binocular(g, 1);
    ValidationResult ok = validate_binocular(g, b);
    if (!ok) return "graph " + std::to_string(iter) + ": " + ok.message();
    if (static_cast<double>(b.vertices.size()) > 4 * std::log2(n) - 1 + 1e-9) {
      return "graph " + std::to_string(iter) + ": " + std::to_string(b.vertices.size()) +
             " vertices on n=" + std::to_string(n);
    }
  }
  return "";
}

// ---- criterion 5: loop reduction lifts with at most two extra edges --------

std::string check_loop_lift() {
  Rng rng(555);
  int lifted = 0, attempts = 0;
  while (lifted < 500 && attempts < 5000) {
    ++attempts;
    const int n = 8 + static_cast<int>(rng.below(33));
    Multigraph g;
    g.num_vertices = n;
    std::set<int> loopy;
    while (static_cast<int>(loopy.size()) < 3) loopy.insert(static_cast<int>(rng.below(n)));
    for (int v : loopy) g.add_edge(v, v);
    for (int e = 0; e < 3 * n; ++e)
      g.add_edge(static_cast<int>(rng.below(n)), static_cast<int>(rng.below(n)));
    LoopReduction r = loop_reduce(g);
    if (r.reduced.num_vertices < 1) continue;
    if (r.reduced.num_edges() < 2 * r.reduced.num_vertices) continue;
    Binocular rb = find_binocular(r.reduced, 1);
    Binocular lb = lift_improvement(g, r, rb);
    ValidationResult ok = validate_binocular(g, lb);
    if (!ok) return "attempt " + std::to_string(attempts) + ": " + ok.message();
    if (lb.edge_indices.size() > rb.edge_indices.size() + 2) {
      return "attempt " + std::to_string(attempts) + ": lift added " +
             std::to_string(lb.edge_indices.size() - rb.edge_indices.size()) + " edges";
    }
    ++lifted;
  }
  if (lifted < 500) return "only " + std::to_string(lifted) + " lifts in 5000 attempts";
  return "";
}

// ---- criterion 6: partition counts and uniform sampling --------------------

long count_partitions(std::vector<int>& pool) {
  if (pool.empty()) return 1;
  long total = 0;
  std::vector<int> rest(pool.begin() + 1, pool.end());
  for (size_t i = 0; i < rest.size(); ++i) {
    for (size_t j = i + 1; j < rest.size(); ++j) {
      std::vector<int> next;
      for (size_t x = 0; x < rest.size(); ++x)
        if (x != i && x != j) next.push_back(rest[x]);
      total += count_partitions(next);
    }
  }
  return total;
}

std::string check_partition_combinatorics() {
  if (triple_partition_count(0) != 1) return "tau(0) != 1";
  if (triple_partition_count(3) != 1) return "tau(3) != 1";
  for (int m : {6, 9}) {
    std::vector<int> pool(m);
    for (int i = 0; i < m; ++i) pool[i] = i;
    if (triple_partition_count(m) != count_partitions(pool))
      return "tau(" + std::to_string(m) + ") disagrees with enumeration";
  }

  std::map<std::string, int> counts;
  const int samples = 100000;
  for (int i = 0; i < samples; ++i) {
    auto r = random_triple_partition(6, Rng::derive(666, i));
    std::sort(r.begin(), r.end());
    std::ostringstream key;
    for (const Triple& tr : r) key << tr[0] << tr[1] << tr[2];
    ++counts[key.str()];
  }
  if (counts.size() != 10) return "saw " + std::to_string(counts.size()) + " of 10 partitions";
  const double expect = samples / 10.0;
  double chi2 = 0;
  for (const auto& [key, obs] : counts) chi2 += (obs - expect) * (obs - expect) / expect;
  if (chi2 >= 27.877) return "chi2 " + std::to_string(chi2) + " >= 27.877 (df 9, p 0.001)";
  return "";
}

// ---- criterion 7: the adversarial gap family -------------------------------

std::string check_gap_family() {
  struct Params {
    int k, n, t;
  };
  for (Params p : {Params{3, 2, 2}, {3, 3, 2}, {6, 2, 2}}) {
    GapParams gp;
    gp.k = p.k;
    gp.n = p.n;
    gp.t = p.t;
    gp.seed = 77;
    const std::string tag =
        "(" + std::to_string(p.k) + "," + std::to_string(p.n) + "," + std::to_string(p.t) + ")";
    GapInstance gi = generate_gap_instance(gp);
    if (static_cast<int>(gi.blocks.size()) != 3 * p.n) return tag + ": wrong block count";
    if (static_cast<int>(gi.triples.size()) != p.k * p.n) return tag + ": wrong triple count";
    // |O| / |S| = k/3 exactly
    if (3 * gi.triples.size() != static_cast<size_t>(p.k) * gi.blocks.size())
      return tag + ": ratio is not k/3";
    if (!is_packing(gi.instance, gi.blocks) || !is_packing(gi.instance, gi.triples))
      return tag + ": blocks or triples are not packings";
    Packing blocks{gi.blocks};
    AuxMultigraph g = build_aux_graph(gi.instance, blocks, true);
    if (naive_canonical_search(gi.instance, blocks, g, p.t))
      return tag + ": blocks admit a <= t improvement";
    ExactPackingResult opt = exact_max_packing(gi.instance);
    if (!opt.proven_optimal) return tag + ": optimum not proven";
    if (opt.packing.size() < p.k * p.n)
      return tag + ": optimum " + std::to_string(opt.packing.size()) + " below kn";
  }
  return "";
}

// ---- criterion 8: expectation bound, exact and Monte Carlo -----------------

std::string check_expectation_bound() {
  for (int k = 3; k <= 5; ++k)
    for (int n = 1; n <= 20; ++n)
      for (int a = 1; a <= 6; ++a)
        if (!exact_bound_below_closed_form(k, n, a)) {
          return "exact > closed form at (" + std::to_string(k) + "," + std::to_string(n) + "," +
                 std::to_string(a) + ")";
        }

  // Monte Carlo at (3,4,2): two blocks hold at most two triples, so the
  // exact pair expectation is the full E[U_2]
  const int k = 3, n = 4, a = 2;
  const double exact = mpq_class(expected_unstable_bound(k, n, a).exact).get_d();
  const int samples = 10000;
  std::vector<int> pairs;
  for (int b1 = 0; b1 < 3 * n; ++b1)
    for (int b2 = b1 + 1; b2 < 3 * n; ++b2) pairs.push_back(b1 * 100 + b2);
  double sum = 0, sumsq = 0;
  for (int i = 0; i < samples; ++i) {
    auto r = random_triple_partition(3 * k * n, Rng::derive(888, i));
    int unstable = 0;
    for (int code : pairs)
      if (is_unstable(k, n, r, {code / 100, code % 100})) ++unstable;
    sum += unstable;
    sumsq += static_cast<double>(unstable) * unstable;
  }
  const double mean = sum / samples;
  const double var = (sumsq - sum * sum / samples) / (samples - 1);
  const double sigma = std::sqrt(var / samples);
  if (std::abs(mean - exact) > 3 * sigma) {
    return "estimate " + std::to_string(mean) + " vs exact " + std::to_string(exact) +
           " (sigma " + std::to_string(sigma) + ")";
  }
  return "";
}

// ---- criterion 9: end-to-end runs in every mode -----------------------------

std::string run_report_line(const Instance& inst, const std::string& label, const std::string& mode,
                            uint64_t seed) {
  RunReport r;
  r.instance = label;
  r.digest = instance_digest(inst);
  r.mode = mode;
  r.k = inst.k;
  r.sets = inst.num_sets();
  r.ground = inst.ground_size;
  r.seed = seed;
  if (mode == "hs") {
    r.t = 0;
    r.swap_size = 2;
    r.greedy_size = greedy_maximalize(inst, {}).size();
    r.packing_size = hurkens_schrijver_baseline(inst, 2).size();
  } else {
    SearchConfig cfg;
    cfg.mode = mode == "naive" ? SearchMode::NaiveEnumeration : SearchMode::ColorCoding;
    cfg.t = 4;
    cfg.trials = 300;
    cfg.seed = seed;
    auto [packing, trace] = run_local_search(inst, cfg);
    r.t = 4;
    r.trials = mode == "color" ? 300 : 0;
    r.family = mode == "color" ? "seeded" : "";
    r.greedy_size =
        trace.iterations.empty() ? packing.size() : trace.iterations.front().size_before;
    r.packing_size = packing.size();
    r.iterations = static_cast<long>(trace.iterations.size());
    r.colorings_tried = trace.total_colorings;
  }
  r.wall_ms = 0.0;
  return report_to_json(r).dump();
}

std::string check_end_to_end() {
  std::vector<std::pair<std::string, Instance>> instances;
  instances.emplace_back("random-k3-a", random_instance(3, 14, 16, 100));
  instances.emplace_back("random-k3-b", random_instance(3, 18, 20, 101));
  instances.emplace_back("random-k4", random_instance(4, 12, 20, 102));
  instances.emplace_back("planted", pad_to_k({{0, 1, 2}, {0, 3, 4}, {1, 5, 6}}, 3));
  GapParams gp;
  gp.seed = 9;
  instances.emplace_back("gap-k3-n2", generate_gap_instance(gp).instance);

  for (const auto& [label, inst] : instances) {
    const int greedy_size = greedy_maximalize(inst, {}).size();
    for (const std::string mode : {"naive", "color", "hs"}) {
      Packing result;
      if (mode == "hs") {
        result = hurkens_schrijver_baseline(inst, 2);
      } else {
        SearchConfig cfg;
        cfg.mode = mode == "naive" ? SearchMode::NaiveEnumeration : SearchMode::ColorCoding;
        cfg.t = 4;
        cfg.trials = 300;
        cfg.seed = 55;
        result = run_local_search(inst, cfg).first;
      }
      const std::string tag = label + "/" + mode;
      if (!is_packing(inst, result.ids)) return tag + ": not a packing";
      if (!is_maximal(inst, result)) return tag + ": not maximal";
      if (result.size() < greedy_size) return tag + ": below greedy size";
      if (run_report_line(inst, label, mode, 55) != run_report_line(inst, label, mode, 55))
        return tag + ": reports differ between identical runs";
    }
    // the serializer is byte-stable too
    std::ostringstream w1, w2;
    write_instance(inst, w1);
    write_instance(inst, w2);
    if (w1.str() != w2.str()) return label + ": instance serialization differs";
  }
  return "";
}

}  // namespace

int main() {
  Gate gate;
  gate.run(1, "local search beats (k+2)/3 against the exact optimum on 200 instances",
           check_ratio_bound);
  gate.run(2, "colorful hit rate matches the exact rational and beats e^{-kt}",
           check_colorful_probability);
  gate.run(3, "dp reachability equals walk enumeration on 500 graphs", check_dp_oracle);
  gate.run(4, "binoculars cover at most 4 log2(n) - 1 vertices on 1000 graphs",
           check_binocular_bound);
  gate.run(5, "500 loop reductions lift with at most two extra edges", check_loop_lift);
  gate.run(6, "partition counts match enumeration; sampling is uniform (chi-squared)",
           check_partition_combinatorics);
  gate.run(7, "gap family: ratio k/3, stable blocks, optimum >= kn", check_gap_family);
  gate.run(8, "exact expectation stays below (e^5 ka/9n)^a; Monte Carlo agrees",
           check_expectation_bound);
  gate.run(9, "all modes return maximal packings >= greedy with byte-stable reports",
           check_end_to_end);
  if (gate.failed > 0) {
    std::cout << gate.failed << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all 9 criteria passed\n";
  return 0;
}
