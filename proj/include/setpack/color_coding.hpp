#pragma once

#include <optional>
#include <vector>

#include "setpack/aux_graph.hpp"
#include "setpack/bigmath.hpp"
#include "setpack/color_mask.hpp"
#include "setpack/instance.hpp"

namespace setpack {

// Elements get independent uniform colors; a collection of sets is colorful
// when no color repeats across it.  Colorful collections are automatically
// disjoint, which turns the disjointness constraint of an improvement search
// into a cheap bitmask test.
struct Coloring {
  int num_colors = 0;
  std::vector<int> assignment;  // element -> color

  int color_of(ElementId e) const { return assignment[e]; }
};

Coloring random_coloring(int ground_size, int num_colors, uint64_t seed);

// Exact probability that i specific sets of k elements each (ki distinct
// elements total) receive ki distinct colors out of num_colors:
//   num_colors! / ((num_colors - ki)! * num_colors^ki)
// Positive, and for num_colors = k*t, i <= t it stays above e^{-kt}.
BigRat colorful_probability(int num_colors, int k, int i);

// Per-edge color sets of the labels; an edge is usable (rainbow) only when
// its k label elements got k distinct colors.
template <class Mask>
struct EdgeColorInfo {
  std::vector<Mask> mask;
  std::vector<char> rainbow;
};

template <class Mask>
EdgeColorInfo<Mask> color_edges(const std::vector<std::vector<ElementId>>& edge_elements, int k,
                                const Coloring& coloring);

template <class Mask>
EdgeColorInfo<Mask> color_edges(const AuxMultigraph& g, const Instance& inst, const Coloring& coloring);

// Reachability table for colorful walks: entry (s, t, i) holds every color
// set C such that some walk of exactly i rainbow edges from s to t uses the
// colors C with no repeats.  Walks of length zero exist from every vertex to
// itself with the empty color set.  Distinct masks imply the walks' edges are
// distinct, so anything read off this table is automatically edge-distinct.
template <class Mask>
class DpTable {
 public:
  DpTable(int num_vertices, int max_len) : n_(num_vertices), cells_((max_len + 1) * n_ * n_) {}

  int max_len() const { return static_cast<int>(cells_.size() / (n_ * n_)) - 1; }

  const std::vector<Mask>& masks(int s, int t, int i) const { return cells_[index(s, t, i)]; }
  bool contains(int s, int t, int i, const Mask& c) const;

  std::vector<Mask>& cell(int s, int t, int i) { return cells_[index(s, t, i)]; }

 private:
  size_t index(int s, int t, int i) const {
    return (static_cast<size_t>(i) * n_ + s) * n_ + t;
  }

  int n_;
  std::vector<std::vector<Mask>> cells_;
};

template <class Mask>
DpTable<Mask> build_dp(const AuxMultigraph& g, const EdgeColorInfo<Mask>& colors, int max_len);

// Walk reconstruction by backtracking through the table.  Returns edge
// indices, or nothing when the cell is empty / the mask is absent.
template <class Mask>
std::optional<std::vector<int>> find_colorful_path(const AuxMultigraph& g, const EdgeColorInfo<Mask>& colors,
                                                   const DpTable<Mask>& dp, int s, int t, int i,
                                                   const Mask& c);

template <class Mask>
std::optional<std::vector<int>> find_colorful_cycle(const AuxMultigraph& g, const EdgeColorInfo<Mask>& colors,
                                                    const DpTable<Mask>& dp, int u, int j);

// Searches one coloring for a canonical improvement of at most max_edges
// edges: first two cycles meeting at a vertex, then three paths between a
// vertex pair, then two cycles joined by a path; within a shape, smaller
// total length first.  Any hit is re-validated against the raw sets before
// being returned.
template <class Mask>
std::optional<ImprovementCandidate> search_canonical_masked(const Instance& inst, const Packing& a,
                                                            const AuxMultigraph& g,
                                                            const EdgeColorInfo<Mask>& colors, int max_edges);

// Dispatches on the coloring width (<= 64 colors fast path, <= 256 wide).
std::optional<ImprovementCandidate> search_canonical(const Instance& inst, const Packing& a,
                                                     const AuxMultigraph& g, const Coloring& coloring,
                                                     int max_edges);

std::vector<std::vector<ElementId>> edge_elements_of(const AuxMultigraph& g, const Instance& inst);

}  // namespace setpack
