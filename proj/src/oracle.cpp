#include "setpack/oracle.hpp"

#include <algorithm>
#include <set>

#include "setpack/errors.hpp"

namespace setpack {

namespace {

struct PackingSearch {
  const Instance& inst;
  const Budget& budget;
  std::vector<std::vector<int>> conflict;  // set -> conflicting sets (excl. itself)
  std::vector<char> alive;
  std::vector<int> killed_stack;
  std::vector<int> chosen;
  std::vector<int> best;
  long nodes = 0;
  bool aborted = false;

  PackingSearch(const Instance& i, const Budget& b) : inst(i), budget(b) {
    const int m = inst.num_sets();
    conflict.resize(m);
    std::vector<std::vector<int>> holders(inst.ground_size);
    for (int s = 0; s < m; ++s) {
      for (ElementId e : inst.set(s).elements) holders[e].push_back(s);
    }
    for (const auto& hs : holders) {
      for (int x : hs) {
        for (int y : hs) {
          if (x != y) conflict[x].push_back(y);
        }
      }
    }
    for (auto& c : conflict) {
      std::sort(c.begin(), c.end());
      c.erase(std::unique(c.begin(), c.end()), c.end());
    }
    alive.assign(m, 1);
  }

  int kill(int s) {  // returns 1 if it was alive
    if (!alive[s]) return 0;
    alive[s] = 0;
    killed_stack.push_back(s);
    return 1;
  }

  void revive(size_t mark) {
    while (killed_stack.size() > mark) {
      alive[killed_stack.back()] = 1;
      killed_stack.pop_back();
    }
  }

  void dfs(int from, int alive_count) {
    if (++nodes > budget.max_nodes) {
      aborted = true;
      return;
    }
    if (static_cast<int>(chosen.size()) > static_cast<int>(best.size())) best = chosen;
    if (static_cast<int>(chosen.size()) + alive_count <= static_cast<int>(best.size())) return;
    int s = -1;
    for (int i = from; i < inst.num_sets(); ++i) {
      if (alive[i]) {
        s = i;
        break;
      }
    }
    if (s < 0) return;

    // include s
    size_t mark = killed_stack.size();
    int removed = kill(s);
    for (int c : conflict[s]) removed += kill(c);
    chosen.push_back(s);
    dfs(s + 1, alive_count - removed);
    chosen.pop_back();
    revive(mark);
    if (aborted) return;

    // exclude s
    kill(s);
    dfs(s + 1, alive_count - 1);
    revive(mark);
  }
};

}  // namespace

ExactPackingResult exact_max_packing(const Instance& inst, const Budget& budget) {
  PackingSearch search(inst, budget);

  // greedy warm start tightens the bound from the first node on
  {
    std::vector<char> used(inst.ground_size, 0);
    for (int s = 0; s < inst.num_sets(); ++s) {
      bool free = true;
      for (ElementId e : inst.set(s).elements) free = free && !used[e];
      if (!free) continue;
      for (ElementId e : inst.set(s).elements) used[e] = 1;
      search.best.push_back(s);
    }
  }

  search.dfs(0, inst.num_sets());

  ExactPackingResult res;
  res.packing.ids = search.best;
  std::sort(res.packing.ids.begin(), res.packing.ids.end());
  res.proven_optimal = !search.aborted;
  res.nodes = search.nodes;
  return res;
}

namespace {

// Strips tree branches off a connected edge set with |E| = |V|+1, leaving one
// of the three minimal two-cycle shapes, and names which one it is.
ImprovementCandidate minimalize(const AuxMultigraph& g, std::vector<int> edges) {
  auto degree_of = [&](const std::vector<int>& es) {
    std::vector<int> deg(g.num_vertices(), 0);
    for (int e : es) {
      deg[g.edges[e].u] += 1;
      deg[g.edges[e].v] += 1;
    }
    return deg;
  };

  while (true) {
    std::vector<int> deg = degree_of(edges);
    int leaf = -1;
    for (int e : edges) {
      if (g.edges[e].is_loop()) continue;
      if (deg[g.edges[e].u] == 1 || deg[g.edges[e].v] == 1) {
        leaf = e;
        break;
      }
    }
    if (leaf < 0) break;
    edges.erase(std::find(edges.begin(), edges.end(), leaf));
  }

  std::vector<int> deg = degree_of(edges);
  std::vector<VertexId> hubs;
  std::set<VertexId> covered;
  for (int e : edges) {
    covered.insert(g.edges[e].u);
    covered.insert(g.edges[e].v);
  }
  for (VertexId v : covered) {
    if (deg[v] >= 3) hubs.push_back(v);
  }

  ImprovementShape shape = ImprovementShape::TwoCyclesSharedVertex;
  if (hubs.size() == 2) {
    // Drop one hub; if the other still sits on a cycle the two cycles were
    // joined by a path, otherwise all cycles ran through both hubs (theta).
    VertexId x = hubs[0], y = hubs[1];
    std::vector<int> rest;
    for (int e : edges) {
      if (g.edges[e].u != x && g.edges[e].v != x) rest.push_back(e);
    }
    std::set<VertexId> comp{y};
    size_t comp_edges = 0;
    bool grew = true;
    std::vector<char> in_comp_edge(rest.size(), 0);
    while (grew) {
      grew = false;
      for (size_t i = 0; i < rest.size(); ++i) {
        if (in_comp_edge[i]) continue;
        const AuxEdge& ed = g.edges[rest[i]];
        if (comp.count(ed.u) || comp.count(ed.v)) {
          comp.insert(ed.u);
          comp.insert(ed.v);
          in_comp_edge[i] = 1;
          ++comp_edges;
          grew = true;
        }
      }
    }
    shape = comp_edges >= comp.size() ? ImprovementShape::TwoCyclesJoinedByPath
                                      : ImprovementShape::ThreePaths;
  }

  ImprovementCandidate cand;
  std::sort(edges.begin(), edges.end());
  cand.edge_indices = std::move(edges);
  cand.shape = shape;
  cand.covered_vertices.assign(covered.begin(), covered.end());
  return cand;
}

// Connected-subset enumeration with the usual extension discipline: each
// subset is reached exactly once by consuming extension candidates in order
// and never re-offering an edge already offered on the current path.
struct SubsetSearch {
  const Instance& inst;
  const Packing& packing;
  const AuxMultigraph& g;
  int max_edges;
  const Budget& budget;

  std::vector<char> offered;       // edge -> already offered on this path
  std::vector<char> element_used;  // element -> used by a chosen label
  std::vector<int> cover_count;    // vertex -> incident chosen edges
  std::vector<int> chosen;
  int covered = 0;
  long examined = 0;
  std::optional<ImprovementCandidate> found;

  SubsetSearch(const Instance& i, const Packing& a, const AuxMultigraph& gg, int me, const Budget& b)
      : inst(i), packing(a), g(gg), max_edges(me), budget(b) {
    offered.assign(g.num_edges(), 0);
    element_used.assign(i.ground_size, 0);
    cover_count.assign(g.num_vertices(), 0);
  }

  bool label_fits(int e) const {
    for (ElementId el : inst.set(g.edges[e].label).elements) {
      if (element_used[el]) return false;
    }
    return true;
  }

  void take(int e) {
    for (ElementId el : inst.set(g.edges[e].label).elements) element_used[el] = 1;
    if (cover_count[g.edges[e].u]++ == 0) ++covered;
    if (!g.edges[e].is_loop() && cover_count[g.edges[e].v]++ == 0) ++covered;
    chosen.push_back(e);
  }

  void drop(int e) {
    chosen.pop_back();
    if (--cover_count[g.edges[e].u] == 0) --covered;
    if (!g.edges[e].is_loop() && --cover_count[g.edges[e].v] == 0) --covered;
    for (ElementId el : inst.set(g.edges[e].label).elements) element_used[el] = 0;
  }

  // ext holds edges that may still be added, all with index > anchor.
  void grow(int anchor, std::vector<int> ext) {
    if (found) return;
    if (++examined > budget.max_candidates) {
      throw BudgetError("naive_canonical_search: candidate budget exhausted before certification");
    }
    if (static_cast<int>(chosen.size()) >= covered + 1 && chosen.size() >= 2) {
      ImprovementCandidate cand = minimalize(g, chosen);
      if (validate_improvement(inst, packing, g, cand)) {
        found = cand;
        return;
      }
    }
    if (static_cast<int>(chosen.size()) == max_edges) return;
    for (size_t i = 0; i < ext.size(); ++i) {
      int e = ext[i];
      if (!label_fits(e)) continue;
      std::vector<int> next(ext.begin() + i + 1, ext.end());
      std::vector<int> added;
      for (VertexId v : {g.edges[e].u, g.edges[e].v}) {
        for (int f : g.incident[v]) {
          if (f > anchor && !offered[f] && f != e) {
            next.push_back(f);
            added.push_back(f);
            offered[f] = 1;
          }
        }
        if (g.edges[e].is_loop()) break;
      }
      take(e);
      grow(anchor, std::move(next));
      drop(e);
      for (int f : added) offered[f] = 0;
      if (found) return;
    }
  }

  void run() {
    for (int e0 = 0; e0 < g.num_edges() && !found; ++e0) {
      std::fill(offered.begin(), offered.end(), 0);
      if (!label_fits(e0)) continue;
      offered[e0] = 1;
      std::vector<int> ext;
      for (VertexId v : {g.edges[e0].u, g.edges[e0].v}) {
        for (int f : g.incident[v]) {
          if (f > e0 && !offered[f]) {
            ext.push_back(f);
            offered[f] = 1;
          }
        }
        if (g.edges[e0].is_loop()) break;
      }
      take(e0);
      grow(e0, std::move(ext));
      drop(e0);
    }
  }
};

}  // namespace

std::optional<ImprovementCandidate> naive_canonical_search(const Instance& inst, const Packing& a,
                                                           const AuxMultigraph& g, int max_edges,
                                                           const Budget& budget) {
  if (max_edges < 2) return std::nullopt;
  SubsetSearch search(inst, a, g, max_edges, budget);
  search.run();
  return search.found;
}

std::vector<std::vector<int>> enumerate_colorful_walks(
    const AuxMultigraph& g, const std::vector<std::vector<ElementId>>& edge_elements, int k,
    const Coloring& coloring, int s, int t, int length) {
  // independent recomputation of edge colors, on purpose without bitmasks
  std::vector<std::set<int>> edge_colors(edge_elements.size());
  std::vector<char> rainbow(edge_elements.size(), 0);
  for (size_t e = 0; e < edge_elements.size(); ++e) {
    for (ElementId el : edge_elements[e]) edge_colors[e].insert(coloring.color_of(el));
    rainbow[e] = static_cast<int>(edge_colors[e].size()) == k &&
                 static_cast<int>(edge_elements[e].size()) == k;
  }

  std::vector<std::vector<int>> walks;
  std::vector<int> walk;
  std::set<int> used;

  auto disjoint = [&](int e) {
    for (int c : edge_colors[e]) {
      if (used.count(c)) return false;
    }
    return true;
  };

  auto dfs = [&](auto&& self, int cur, int remaining) -> void {
    if (remaining == 0) {
      if (cur == t) walks.push_back(walk);
      return;
    }
    for (int e : g.incident[cur]) {
      if (!rainbow[e] || !disjoint(e)) continue;
      int nxt = g.edges[e].u == cur ? g.edges[e].v : g.edges[e].u;
      for (int c : edge_colors[e]) used.insert(c);
      walk.push_back(e);
      self(self, nxt, remaining - 1);
      walk.pop_back();
      for (int c : edge_colors[e]) used.erase(c);
    }
  };
  dfs(dfs, s, length);
  return walks;
}

}  // namespace setpack
