#include "setpack/color_coding.hpp"

#include <algorithm>
#include <set>

#include "setpack/errors.hpp"
#include "setpack/rng.hpp"

namespace setpack {

Coloring random_coloring(int ground_size, int num_colors, uint64_t seed) {
  if (ground_size < 0 || num_colors < 1) {
    throw InvalidInputError("random_coloring: need ground_size >= 0 and num_colors >= 1");
  }
  Coloring c;
  c.num_colors = num_colors;
  c.assignment.resize(ground_size);
  Rng rng(seed);
  for (int e = 0; e < ground_size; ++e) {
    c.assignment[e] = static_cast<int>(rng.below(num_colors));
  }
  return c;
}

BigRat colorful_probability(int num_colors, int k, int i) {
  if (num_colors < 1 || k < 1 || i < 0) {
    throw InvalidInputError("colorful_probability: bad arguments");
  }
  long ki = static_cast<long>(k) * i;
  if (ki > num_colors) return BigRat(0);
  BigInt numerator = 1;
  for (long j = 0; j < ki; ++j) numerator *= BigInt(num_colors - j);
  BigRat p(numerator, pow_int(BigInt(num_colors), static_cast<unsigned long>(ki)));
  p.canonicalize();
  return p;
}

std::vector<std::vector<ElementId>> edge_elements_of(const AuxMultigraph& g, const Instance& inst) {
  std::vector<std::vector<ElementId>> out;
  out.reserve(g.edges.size());
  for (const AuxEdge& e : g.edges) out.push_back(inst.set(e.label).elements);
  return out;
}

template <class Mask>
EdgeColorInfo<Mask> color_edges(const std::vector<std::vector<ElementId>>& edge_elements, int k,
                                const Coloring& coloring) {
  if (coloring.num_colors > Mask::capacity()) {
    throw ConfigError("coloring uses more colors than this mask type holds");
  }
  EdgeColorInfo<Mask> info;
  info.mask.resize(edge_elements.size());
  info.rainbow.resize(edge_elements.size());
  for (size_t e = 0; e < edge_elements.size(); ++e) {
    if (static_cast<int>(edge_elements[e].size()) != k) {
      throw InvalidInputError("edge label is not a k-set");
    }
    Mask m;
    int distinct = 0;
    for (ElementId el : edge_elements[e]) {
      if (el < 0 || el >= static_cast<ElementId>(coloring.assignment.size())) {
        throw InvalidInputError("edge label element outside the colored ground set");
      }
      int c = coloring.color_of(el);
      if (!m.test(c)) ++distinct;
      m.set(c);
    }
    info.mask[e] = m;
    info.rainbow[e] = (distinct == k) ? 1 : 0;
  }
  return info;
}

template <class Mask>
EdgeColorInfo<Mask> color_edges(const AuxMultigraph& g, const Instance& inst, const Coloring& coloring) {
  return color_edges<Mask>(edge_elements_of(g, inst), inst.k, coloring);
}

template <class Mask>
bool DpTable<Mask>::contains(int s, int t, int i, const Mask& c) const {
  const auto& cell = masks(s, t, i);
  return std::binary_search(cell.begin(), cell.end(), c);
}

template <class Mask>
DpTable<Mask> build_dp(const AuxMultigraph& g, const EdgeColorInfo<Mask>& colors, int max_len) {
  const int n = g.num_vertices();
  if (max_len < 0) throw InvalidInputError("build_dp: negative length");
  DpTable<Mask> dp(n, max_len);
  for (int s = 0; s < n; ++s) dp.cell(s, s, 0).push_back(Mask{});

  for (int i = 1; i <= max_len; ++i) {
    for (int s = 0; s < n; ++s) {
      for (int e = 0; e < g.num_edges(); ++e) {
        if (!colors.rainbow[e]) continue;
        const Mask& em = colors.mask[e];
        auto extend = [&](int from, int to) {
          for (const Mask& m : dp.masks(s, from, i - 1)) {
            if (m.intersects(em)) continue;
            dp.cell(s, to, i).push_back(m | em);
          }
        };
        extend(g.edges[e].u, g.edges[e].v);
        if (!g.edges[e].is_loop()) extend(g.edges[e].v, g.edges[e].u);
      }
      for (int t = 0; t < n; ++t) {
        auto& cell = dp.cell(s, t, i);
        std::sort(cell.begin(), cell.end());
        cell.erase(std::unique(cell.begin(), cell.end()), cell.end());
      }
    }
  }
  return dp;
}

template <class Mask>
std::optional<std::vector<int>> find_colorful_path(const AuxMultigraph& g, const EdgeColorInfo<Mask>& colors,
                                                   const DpTable<Mask>& dp, int s, int t, int i,
                                                   const Mask& c) {
  if (i == 0) {
    if (s == t && c.empty()) return std::vector<int>{};
    return std::nullopt;
  }
  if (!dp.contains(s, t, i, c)) return std::nullopt;
  for (int e : g.incident[t]) {
    if (!colors.rainbow[e]) continue;
    const Mask& em = colors.mask[e];
    if (!c.covers(em)) continue;
    int from = g.edges[e].u == t ? g.edges[e].v : g.edges[e].u;
    auto head = find_colorful_path(g, colors, dp, s, from, i - 1, c.without(em));
    if (head) {
      head->push_back(e);
      return head;
    }
  }
  return std::nullopt;
}

template <class Mask>
std::optional<std::vector<int>> find_colorful_cycle(const AuxMultigraph& g, const EdgeColorInfo<Mask>& colors,
                                                    const DpTable<Mask>& dp, int u, int j) {
  const auto& cell = dp.masks(u, u, j);
  if (cell.empty()) return std::nullopt;
  return find_colorful_path(g, colors, dp, u, u, j, cell.front());
}

namespace {

template <class Mask>
ImprovementCandidate assemble(ImprovementShape shape, std::initializer_list<const std::vector<int>*> walks) {
  std::set<int> edges;
  for (const auto* w : walks) edges.insert(w->begin(), w->end());
  ImprovementCandidate cand;
  cand.edge_indices.assign(edges.begin(), edges.end());
  cand.shape = shape;
  return cand;
}

}  // namespace

template <class Mask>
std::optional<ImprovementCandidate> search_canonical_masked(const Instance& inst, const Packing& a,
                                                            const AuxMultigraph& g,
                                                            const EdgeColorInfo<Mask>& colors, int max_edges) {
  const int n = g.num_vertices();
  if (max_edges < 2 || n == 0) return std::nullopt;
  DpTable<Mask> dp = build_dp(g, colors, max_edges - 1);

  auto finish = [&](ImprovementCandidate cand) -> std::optional<ImprovementCandidate> {
    std::set<VertexId> covered;
    for (int e : cand.edge_indices) {
      covered.insert(g.edges[e].u);
      covered.insert(g.edges[e].v);
    }
    cand.covered_vertices.assign(covered.begin(), covered.end());
    if (!validate_improvement(inst, a, g, cand)) return std::nullopt;
    return cand;
  };

  // two cycles meeting at a vertex
  for (int total = 2; total <= max_edges; ++total) {
    for (int l1 = 1; l1 * 2 <= total; ++l1) {
      int l2 = total - l1;
      for (int u = 0; u < n; ++u) {
        for (const Mask& c1 : dp.masks(u, u, l1)) {
          for (const Mask& c2 : dp.masks(u, u, l2)) {
            if (l1 == l2 && !(c1 < c2)) continue;
            if (c1.intersects(c2)) continue;
            auto w1 = find_colorful_path(g, colors, dp, u, u, l1, c1);
            auto w2 = find_colorful_path(g, colors, dp, u, u, l2, c2);
            if (!w1 || !w2) continue;
            auto cand = finish(assemble<Mask>(ImprovementShape::TwoCyclesSharedVertex, {&*w1, &*w2}));
            if (cand) return cand;
          }
        }
      }
    }
  }

  // three walks between a pair of vertices
  for (int total = 3; total <= max_edges; ++total) {
    for (int l1 = 1; l1 * 3 <= total; ++l1) {
      for (int l2 = l1; l2 * 2 <= total - l1; ++l2) {
        int l3 = total - l1 - l2;
        for (int x = 0; x < n; ++x) {
          for (int y = x + 1; y < n; ++y) {
            for (const Mask& c1 : dp.masks(x, y, l1)) {
              for (const Mask& c2 : dp.masks(x, y, l2)) {
                if (l1 == l2 && !(c1 < c2)) continue;
                if (c1.intersects(c2)) continue;
                for (const Mask& c3 : dp.masks(x, y, l3)) {
                  if (l2 == l3 && !(c2 < c3)) continue;
                  if (c3.intersects(c1) || c3.intersects(c2)) continue;
                  auto w1 = find_colorful_path(g, colors, dp, x, y, l1, c1);
                  auto w2 = find_colorful_path(g, colors, dp, x, y, l2, c2);
                  auto w3 = find_colorful_path(g, colors, dp, x, y, l3, c3);
                  if (!w1 || !w2 || !w3) continue;
                  auto cand = finish(assemble<Mask>(ImprovementShape::ThreePaths, {&*w1, &*w2, &*w3}));
                  if (cand) return cand;
                }
              }
            }
          }
        }
      }
    }
  }

  // two cycles joined by a walk
  for (int total = 3; total <= max_edges; ++total) {
    for (int l1 = 1; l1 < total; ++l1) {
      for (int l2 = l1; l1 + l2 < total; ++l2) {
        int lp = total - l1 - l2;
        for (int u = 0; u < n; ++u) {
          for (int v = 0; v < n; ++v) {
            if (u == v) continue;
            if (l1 == l2 && v < u) continue;  // (u,v) and (v,u) describe the same split
            for (const Mask& c1 : dp.masks(u, u, l1)) {
              for (const Mask& c2 : dp.masks(v, v, l2)) {
                if (c1.intersects(c2)) continue;
                for (const Mask& cp : dp.masks(u, v, lp)) {
                  if (cp.intersects(c1) || cp.intersects(c2)) continue;
                  auto w1 = find_colorful_path(g, colors, dp, u, u, l1, c1);
                  auto w2 = find_colorful_path(g, colors, dp, v, v, l2, c2);
                  auto wp = find_colorful_path(g, colors, dp, u, v, lp, cp);
                  if (!w1 || !w2 || !wp) continue;
                  auto cand =
                      finish(assemble<Mask>(ImprovementShape::TwoCyclesJoinedByPath, {&*w1, &*w2, &*wp}));
                  if (cand) return cand;
                }
              }
            }
          }
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<ImprovementCandidate> search_canonical(const Instance& inst, const Packing& a,
                                                     const AuxMultigraph& g, const Coloring& coloring,
                                                     int max_edges) {
  if (coloring.num_colors <= Mask64::capacity()) {
    auto colors = color_edges<Mask64>(g, inst, coloring);
    return search_canonical_masked(inst, a, g, colors, max_edges);
  }
  if (coloring.num_colors <= Mask256::capacity()) {
    auto colors = color_edges<Mask256>(g, inst, coloring);
    return search_canonical_masked(inst, a, g, colors, max_edges);
  }
  throw ConfigError("more than 256 colors requested; reduce k*t");
}

template struct EdgeColorInfo<Mask64>;
template struct EdgeColorInfo<Mask256>;
template class DpTable<Mask64>;
template class DpTable<Mask256>;

template EdgeColorInfo<Mask64> color_edges<Mask64>(const std::vector<std::vector<ElementId>>&, int,
                                                   const Coloring&);
template EdgeColorInfo<Mask256> color_edges<Mask256>(const std::vector<std::vector<ElementId>>&, int,
                                                     const Coloring&);
template EdgeColorInfo<Mask64> color_edges<Mask64>(const AuxMultigraph&, const Instance&, const Coloring&);
template EdgeColorInfo<Mask256> color_edges<Mask256>(const AuxMultigraph&, const Instance&, const Coloring&);
template DpTable<Mask64> build_dp<Mask64>(const AuxMultigraph&, const EdgeColorInfo<Mask64>&, int);
template DpTable<Mask256> build_dp<Mask256>(const AuxMultigraph&, const EdgeColorInfo<Mask256>&, int);
template std::optional<std::vector<int>> find_colorful_path<Mask64>(const AuxMultigraph&,
                                                                    const EdgeColorInfo<Mask64>&,
                                                                    const DpTable<Mask64>&, int, int, int,
                                                                    const Mask64&);
template std::optional<std::vector<int>> find_colorful_path<Mask256>(const AuxMultigraph&,
                                                                     const EdgeColorInfo<Mask256>&,
                                                                     const DpTable<Mask256>&, int, int, int,
                                                                     const Mask256&);
template std::optional<std::vector<int>> find_colorful_cycle<Mask64>(const AuxMultigraph&,
                                                                     const EdgeColorInfo<Mask64>&,
                                                                     const DpTable<Mask64>&, int, int);
template std::optional<std::vector<int>> find_colorful_cycle<Mask256>(const AuxMultigraph&,
                                                                      const EdgeColorInfo<Mask256>&,
                                                                      const DpTable<Mask256>&, int, int);
template std::optional<ImprovementCandidate> search_canonical_masked<Mask64>(const Instance&, const Packing&,
                                                                             const AuxMultigraph&,
                                                                             const EdgeColorInfo<Mask64>&,
                                                                             int);
template std::optional<ImprovementCandidate> search_canonical_masked<Mask256>(const Instance&, const Packing&,
                                                                              const AuxMultigraph&,
                                                                              const EdgeColorInfo<Mask256>&,
                                                                              int);

}  // namespace setpack
