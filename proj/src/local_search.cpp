#include "setpack/local_search.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "setpack/errors.hpp"
#include "setpack/rng.hpp"

namespace setpack {

int default_improvement_size(int num_sets) {
  int bits = 0;
  while ((1 << bits) < std::max(num_sets, 1)) ++bits;  // ceil(log2)
  return std::max(4 * bits + 1, 3);
}

SeededRandomFamily::SeededRandomFamily(int ground_size, int num_colors, uint64_t seed, long count)
    : ground_size_(ground_size), num_colors_(num_colors), seed_(seed), count_(count) {
  if (count < 0) throw InvalidInputError("coloring family size must be non-negative");
}

Coloring SeededRandomFamily::at(long index) const {
  return random_coloring(ground_size_, num_colors_, Rng::derive(seed_, static_cast<uint64_t>(index)));
}

ExhaustiveRelevantFamily::ExhaustiveRelevantFamily(int ground_size, int num_colors,
                                                   std::vector<ElementId> support, long cap)
    : ground_size_(ground_size), num_colors_(num_colors), support_(std::move(support)), count_(1) {
  for (size_t i = 0; i < support_.size(); ++i) {
    if (count_ > cap / num_colors_) {
      throw ConfigError("exhaustive coloring family larger than the configured cap");
    }
    count_ *= num_colors_;
  }
}

Coloring ExhaustiveRelevantFamily::at(long index) const {
  Coloring c;
  c.num_colors = num_colors_;
  c.assignment.assign(ground_size_, 0);
  for (ElementId e : support_) {
    c.assignment[e] = static_cast<int>(index % num_colors_);
    index /= num_colors_;
  }
  return c;
}

Packing greedy_maximalize(const Instance& inst, const Packing& base) {
  if (!is_packing(inst, base.ids)) throw InvalidInputError("greedy_maximalize: base is not a packing");
  std::vector<char> used(inst.ground_size, 0);
  for (SetId id : base.ids) {
    for (ElementId e : inst.set(id).elements) used[e] = 1;
  }
  Packing out = base;
  for (SetId s = 0; s < inst.num_sets(); ++s) {
    if (out.contains(s)) continue;
    bool free = true;
    for (ElementId e : inst.set(s).elements) free = free && !used[e];
    if (!free) continue;
    for (ElementId e : inst.set(s).elements) used[e] = 1;
    out.ids.insert(std::lower_bound(out.ids.begin(), out.ids.end(), s), s);
  }
  return out;
}

namespace {

std::unique_ptr<ColoringFamily> make_family(const Instance& inst, const AuxMultigraph& g,
                                            const SearchConfig& cfg, int num_colors, uint64_t round) {
  if (cfg.family == ColoringFamilyKind::SeededRandom) {
    return std::make_unique<SeededRandomFamily>(inst.ground_size, num_colors,
                                                Rng::derive(cfg.seed, round), cfg.trials);
  }
  std::set<ElementId> support;
  for (const AuxEdge& e : g.edges) {
    const auto& els = inst.set(e.label).elements;
    support.insert(els.begin(), els.end());
  }
  return std::make_unique<ExhaustiveRelevantFamily>(
      inst.ground_size, num_colors, std::vector<ElementId>(support.begin(), support.end()),
      cfg.exhaustive_cap);
}

}  // namespace

ImprovementSearch search_improvement(const Instance& inst, const Packing& a, const SearchConfig& cfg,
                                     uint64_t round) {
  ImprovementSearch res;
  res.t = cfg.t > 0 ? cfg.t : default_improvement_size(inst.num_sets());
  res.graph = build_aux_graph(inst, a, cfg.include_self_loops);

  if (cfg.mode == SearchMode::NaiveEnumeration) {
    res.candidate = naive_canonical_search(inst, a, res.graph, res.t, cfg.oracle_budget);
    return res;
  }

  long num_colors = static_cast<long>(inst.k) * res.t;
  if (num_colors > Mask256::capacity()) {
    throw ConfigError("k * t = " + std::to_string(num_colors) + " colors exceeds the supported 256");
  }
  auto family = make_family(inst, res.graph, cfg, static_cast<int>(num_colors), round);
  const long total = family->size();

  auto try_one = [&](long i) {
    return search_canonical(inst, a, res.graph, family->at(i), res.t);
  };

  long winner = total;
  std::optional<ImprovementCandidate> best;
  if (cfg.jobs <= 1) {
    for (long i = 0; i < total; ++i) {
      if (auto cand = try_one(i)) {
        winner = i;
        best = std::move(cand);
        break;
      }
    }
  } else {
    // Chunked pool: threads race within a chunk, the lowest successful index
    // wins, so the outcome matches the serial loop exactly.
    const long chunk = std::max<long>(2L * cfg.jobs, 8);
    for (long start = 0; start < total && winner == total; start += chunk) {
      const long end = std::min(start + chunk, total);
#pragma omp parallel for num_threads(cfg.jobs) schedule(dynamic, 1)
      for (long i = start; i < end; ++i) {
        auto cand = try_one(i);
        if (cand) {
#pragma omp critical
          {
            if (i < winner) {
              winner = i;
              best = std::move(cand);
            }
          }
        }
      }
    }
  }
  res.candidate = std::move(best);
  res.colorings_tried = winner < total ? winner + 1 : total;
  return res;
}

std::pair<Packing, SearchTrace> run_local_search(const Instance& inst, const SearchConfig& cfg) {
  Packing a;
  SearchTrace trace;
  for (uint64_t round = 0;; ++round) {
    if (round > static_cast<uint64_t>(inst.num_sets()) + 1) {
      throw std::logic_error("local search failed to terminate");  // each round must grow |a|
    }
    a = greedy_maximalize(inst, a);
    ImprovementSearch found = search_improvement(inst, a, cfg, round);
    trace.total_colorings += found.colorings_tried;
    if (!found.candidate) break;
    Packing next = apply_improvement(inst, a, found.graph, *found.candidate);
    if (next.size() <= a.size()) {
      throw std::logic_error("improvement did not grow the packing");
    }
    IterationRecord rec;
    rec.size_before = a.size();
    rec.size_after = next.size();
    rec.improvement_edges = static_cast<int>(found.candidate->edge_indices.size());
    rec.shape = found.candidate->shape;
    rec.colorings_tried = found.colorings_tried;
    trace.iterations.push_back(rec);
    a = std::move(next);
  }
  return {a, trace};
}

Packing hurkens_schrijver_baseline(const Instance& inst, int swap_size, const Budget& budget) {
  if (swap_size < 1) throw InvalidInputError("hurkens_schrijver_baseline: swap_size must be >= 1");
  long nodes = 0;

  Packing a = greedy_maximalize(inst, Packing{});
  bool improved = true;
  while (improved) {
    improved = false;
    for (int p = 1; p < swap_size && !improved; ++p) {
      // look for p+1 disjoint outside sets conflicting with at most p members
      std::vector<SetId> outside;
      for (SetId s = 0; s < inst.num_sets(); ++s) {
        if (!a.contains(s)) outside.push_back(s);
      }
      std::vector<SetId> pick;
      std::set<SetId> removed;
      std::vector<char> used(inst.ground_size, 0);

      auto conflicted_members = [&](SetId s, std::vector<SetId>* out) {
        for (SetId m : a.ids) {
          if (removed.count(m)) continue;
          if (conflicts(inst.set(s), inst.set(m))) out->push_back(m);
        }
      };

      auto dfs = [&](auto&& self, size_t from) -> bool {
        if (++nodes > budget.max_candidates) {
          throw ConfigError("hurkens_schrijver_baseline: swap size " +
                            std::to_string(swap_size) + " is too large for this instance");
        }
        if (static_cast<int>(pick.size()) == p + 1) return true;
        for (size_t i = from; i < outside.size(); ++i) {
          SetId s = outside[i];
          bool free = true;
          for (ElementId e : inst.set(s).elements) free = free && !used[e];
          if (!free) continue;
          std::vector<SetId> newly;
          conflicted_members(s, &newly);
          if (removed.size() + newly.size() > static_cast<size_t>(p)) continue;
          for (SetId m : newly) removed.insert(m);
          for (ElementId e : inst.set(s).elements) used[e] = 1;
          pick.push_back(s);
          if (self(self, i + 1)) return true;
          pick.pop_back();
          for (ElementId e : inst.set(s).elements) used[e] = 0;
          for (SetId m : newly) removed.erase(m);
        }
        return false;
      };

      if (dfs(dfs, 0)) {
        std::set<SetId> next(a.ids.begin(), a.ids.end());
        for (SetId m : removed) next.erase(m);
        for (SetId s : pick) next.insert(s);
        a.ids.assign(next.begin(), next.end());
        a = greedy_maximalize(inst, a);
        improved = true;
      }
    }
  }
  return a;
}

}  // namespace setpack
