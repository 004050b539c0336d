#pragma once

#include <optional>
#include <vector>

#include "setpack/aux_graph.hpp"
#include "setpack/color_coding.hpp"
#include "setpack/instance.hpp"

namespace setpack {

struct Budget {
  long max_nodes = 50'000'000;        // branch-and-bound nodes
  long max_candidates = 200'000'000;  // enumerated candidate subsets
};

struct ExactPackingResult {
  Packing packing;
  bool proven_optimal = false;
  long nodes = 0;
};

// Branch and bound over set ids, deterministic.  When the budget runs out the
// best packing found so far comes back with proven_optimal = false.
ExactPackingResult exact_max_packing(const Instance& inst, const Budget& budget = {});

// Exhaustive DFS over connected, label-disjoint edge subsets of at most
// max_edges edges, returning the first one with two independent cycles in a
// fixed enumeration order.  An empty result certifies that no canonical
// improvement of that size exists.  Label disjointness keeps the subsets
// small (at most ground_size / k edges), which is what makes exhaustion
// affordable.  Throws BudgetError when the space is larger than the budget.
std::optional<ImprovementCandidate> naive_canonical_search(const Instance& inst, const Packing& a,
                                                           const AuxMultigraph& g, int max_edges,
                                                           const Budget& budget = {});

// Every walk of exactly `length` edges from s to t whose edges are rainbow
// and whose color sets are pairwise disjoint.  Color sets are recomputed here
// with plain std::set so the bitmask tables can be checked against this
// independently.
std::vector<std::vector<int>> enumerate_colorful_walks(
    const AuxMultigraph& g, const std::vector<std::vector<ElementId>>& edge_elements, int k,
    const Coloring& coloring, int s, int t, int length);

}  // namespace setpack
