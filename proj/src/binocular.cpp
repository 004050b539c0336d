#include "setpack/binocular.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

#include "setpack/errors.hpp"

namespace setpack {

namespace {

// --- pruning ---------------------------------------------------------------
//
// Repeatedly (a) cascades away vertices of degree <= 1, (b) deletes whole
// components in which every vertex has degree exactly 2 (plain cycles, and
// vertices carrying only a loop), and (c) deletes runs of p consecutive
// degree-2 chain vertices together with their p+1 edges.  Each rule keeps
// p*|E| >= (p+1)*|V| intact, so the fixed point is never empty.

struct Pruned {
  std::vector<char> alive_v;
  std::vector<char> alive_e;
  std::vector<int> deg;
};

Pruned prune(const Multigraph& g, int p) {
  Pruned s;
  s.alive_v.assign(g.num_vertices, 1);
  s.alive_e.assign(g.num_edges(), 1);
  s.deg = degrees(g);
  auto inc = incidence_lists(g);

  auto kill_vertex = [&](int v) {
    s.alive_v[v] = 0;
    for (int e : inc[v]) {
      if (!s.alive_e[e]) continue;
      s.alive_e[e] = 0;
      s.deg[g.edges[e].u] -= 1;
      s.deg[g.edges[e].v] -= 1;
    }
  };

  auto cascade_low_degree = [&]() {
    bool any = false;
    std::deque<int> work;
    for (int v = 0; v < g.num_vertices; ++v) {
      if (s.alive_v[v] && s.deg[v] <= 1) work.push_back(v);
    }
    while (!work.empty()) {
      int v = work.front();
      work.pop_front();
      if (!s.alive_v[v] || s.deg[v] > 1) continue;
      for (int e : inc[v]) {
        if (!s.alive_e[e]) continue;
        int other = g.edges[e].u == v ? g.edges[e].v : g.edges[e].u;
        if (other != v) work.push_back(other);
      }
      kill_vertex(v);
      any = true;
    }
    return any;
  };

  // Component of v restricted to alive vertices/edges.
  auto component_of = [&](int v0) {
    std::vector<int> comp{v0};
    std::set<int> seen{v0};
    for (size_t i = 0; i < comp.size(); ++i) {
      for (int e : inc[comp[i]]) {
        if (!s.alive_e[e]) continue;
        for (int w : {g.edges[e].u, g.edges[e].v}) {
          if (s.alive_v[w] && seen.insert(w).second) comp.push_back(w);
        }
      }
    }
    return comp;
  };

  auto delete_bare_cycles = [&]() {
    bool any = false;
    std::vector<char> checked(g.num_vertices, 0);
    for (int v = 0; v < g.num_vertices; ++v) {
      if (!s.alive_v[v] || checked[v]) continue;
      auto comp = component_of(v);
      bool bare = true;
      for (int w : comp) {
        checked[w] = 1;
        if (s.deg[w] != 2) bare = false;
      }
      if (bare) {
        for (int w : comp) kill_vertex(w);
        any = true;
      }
    }
    return any;
  };

  // First maximal chain of >= p degree-2 vertices, lowest chain vertex first;
  // deletes the p members nearest the smaller-id attachment.
  auto delete_long_chain = [&]() {
    std::vector<char> visited(g.num_vertices, 0);
    for (int c = 0; c < g.num_vertices; ++c) {
      if (!s.alive_v[c] || visited[c] || s.deg[c] != 2) continue;
      // walk both ways; chain vertices have two distinct alive non-loop edges
      auto walk = [&](int start_edge) {
        std::vector<int> verts;
        int cur = c;
        int via = start_edge;
        while (true) {
          int nxt = g.edges[via].u == cur ? g.edges[via].v : g.edges[via].u;
          if (s.deg[nxt] != 2) return std::pair<std::vector<int>, int>{verts, nxt};
          verts.push_back(nxt);
          visited[nxt] = 1;
          int continuation = -1;
          for (int e : inc[nxt]) {
            if (s.alive_e[e] && e != via) continuation = continuation < 0 ? e : continuation;
          }
          cur = nxt;
          via = continuation;
        }
      };
      visited[c] = 1;
      std::vector<int> my_edges;
      for (int e : inc[c]) {
        if (s.alive_e[e]) my_edges.push_back(e);
      }
      auto [left_verts, left_attach] = walk(my_edges[0]);
      auto [right_verts, right_attach] = walk(my_edges[1]);
      std::vector<int> chain(left_verts.rbegin(), left_verts.rend());
      chain.push_back(c);
      chain.insert(chain.end(), right_verts.begin(), right_verts.end());
      if (static_cast<int>(chain.size()) < p) continue;
      if (right_attach < left_attach) std::reverse(chain.begin(), chain.end());
      for (int i = 0; i < p; ++i) kill_vertex(chain[i]);
      return true;
    }
    return false;
  };

  while (true) {
    cascade_low_degree();
    if (delete_bare_cycles()) continue;
    if (delete_long_chain()) continue;
    break;
  }
  return s;
}

// --- contraction of surviving chains ---------------------------------------

// One edge of the degree->=3 core.  a and b are original vertex ids; orig
// lists the underlying original edges in path order from a to b.
struct CoreEdge {
  int a = -1;
  int b = -1;
  std::vector<int> orig;
  std::vector<int> inner;
};

struct Core {
  std::vector<int> kept;  // original ids, ascending
  std::vector<CoreEdge> edges;
};

Core contract_chains(const Multigraph& g, const Pruned& s) {
  Core core;
  auto inc = incidence_lists(g);
  for (int v = 0; v < g.num_vertices; ++v) {
    if (s.alive_v[v] && s.deg[v] >= 3) core.kept.push_back(v);
  }
  for (int e = 0; e < g.num_edges(); ++e) {
    if (!s.alive_e[e]) continue;
    int u = g.edges[e].u, v = g.edges[e].v;
    if (s.deg[u] >= 3 && s.deg[v] >= 3) {
      core.edges.push_back(CoreEdge{std::min(u, v), std::max(u, v), {e}, {}});
    }
  }
  std::vector<char> done(g.num_vertices, 0);
  for (int c = 0; c < g.num_vertices; ++c) {
    if (!s.alive_v[c] || done[c] || s.deg[c] != 2) continue;
    auto walk = [&](int start_edge) {
      std::vector<int> verts;
      std::vector<int> edges{start_edge};
      int cur = c;
      int via = start_edge;
      while (true) {
        int nxt = g.edges[via].u == cur ? g.edges[via].v : g.edges[via].u;
        if (s.deg[nxt] != 2) return std::tuple<std::vector<int>, std::vector<int>, int>{verts, edges, nxt};
        verts.push_back(nxt);
        done[nxt] = 1;
        int continuation = -1;
        for (int e : inc[nxt]) {
          if (s.alive_e[e] && e != via) continuation = continuation < 0 ? e : continuation;
        }
        edges.push_back(continuation);
        cur = nxt;
        via = continuation;
      }
    };
    done[c] = 1;
    std::vector<int> my_edges;
    for (int e : inc[c]) {
      if (s.alive_e[e]) my_edges.push_back(e);
    }
    auto [lv, le, la] = walk(my_edges[0]);
    auto [rv, re, ra] = walk(my_edges[1]);
    CoreEdge ce;
    ce.inner.assign(lv.rbegin(), lv.rend());
    ce.inner.push_back(c);
    ce.inner.insert(ce.inner.end(), rv.begin(), rv.end());
    ce.orig.assign(le.rbegin(), le.rend());
    ce.orig.insert(ce.orig.end(), re.begin(), re.end());
    ce.a = la;
    ce.b = ra;
    bool flip = ce.b < ce.a || (ce.a == ce.b && ce.orig.back() < ce.orig.front());
    if (flip) {
      std::swap(ce.a, ce.b);
      std::reverse(ce.orig.begin(), ce.orig.end());
      std::reverse(ce.inner.begin(), ce.inner.end());
    }
    core.edges.push_back(std::move(ce));
  }
  return core;
}

// --- short cycle through the root ------------------------------------------

struct RoundGraph {
  int n = 0;
  std::vector<MgEdge> edges;
  std::vector<int> carrier;  // round edge -> core edge index
};

// BFS tree from root; returns round-edge ids of a shortest-found cycle plus
// the tree path tying it to the root.
std::vector<int> cycle_through_root(const RoundGraph& rg, int root) {
  std::vector<std::vector<int>> inc(rg.n);
  for (int e = 0; e < static_cast<int>(rg.edges.size()); ++e) {
    inc[rg.edges[e].u].push_back(e);
    if (!rg.edges[e].is_loop()) inc[rg.edges[e].v].push_back(e);
  }
  std::vector<int> parent(rg.n, -1), parent_edge(rg.n, -1), depth(rg.n, -1), children(rg.n, 0);
  std::vector<char> is_tree(rg.edges.size(), 0);
  std::deque<int> queue{root};
  depth[root] = 0;
  std::vector<int> order;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    order.push_back(v);
    for (int e : inc[v]) {
      int w = rg.edges[e].u == v ? rg.edges[e].v : rg.edges[e].u;
      if (depth[w] >= 0) continue;
      depth[w] = depth[v] + 1;
      parent[w] = v;
      parent_edge[w] = e;
      is_tree[e] = 1;
      children[v] += 1;
      queue.push_back(w);
    }
  }

  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return std::pair(depth[a], a) < std::pair(depth[b], b);
  });

  auto lca_of = [&](int a, int b) {
    while (depth[a] > depth[b]) a = parent[a];
    while (depth[b] > depth[a]) b = parent[b];
    while (a != b) {
      a = parent[a];
      b = parent[b];
    }
    return a;
  };

  for (int v : order) {
    if (children[v] >= 2) continue;  // not deficient
    int best_edge = -1, best_size = 0, best_u = -1;
    for (int e : inc[v]) {
      if (is_tree[e]) continue;
      int u = rg.edges[e].u == v ? rg.edges[e].v : rg.edges[e].u;
      int l = lca_of(v, u);
      int size = depth[v] + depth[u] - depth[l] + 1;
      if (best_edge < 0 || std::tuple(size, u, e) < std::tuple(best_size, best_u, best_edge)) {
        best_edge = e;
        best_size = size;
        best_u = u;
      }
    }
    if (best_edge < 0) continue;  // can only happen at the root
    int u = best_u;
    int l = lca_of(v, u);
    std::vector<int> out{best_edge};
    for (int x = v; x != l; x = parent[x]) out.push_back(parent_edge[x]);
    for (int x = u; x != l; x = parent[x]) out.push_back(parent_edge[x]);
    for (int x = l; x != root; x = parent[x]) out.push_back(parent_edge[x]);
    return out;
  }
  throw std::logic_error("cycle_through_root: no deficient vertex with a spare edge");
}

}  // namespace

Binocular find_binocular(const Multigraph& g, int p) {
  if (p < 1) throw InvalidInputError("find_binocular: p must be >= 1");
  if (g.num_vertices < 1) throw InvalidInputError("find_binocular: empty graph");
  if (static_cast<long>(p) * g.num_edges() < static_cast<long>(p + 1) * g.num_vertices) {
    throw InvalidInputError("find_binocular: needs |E| >= (p+1)/p * |V|");
  }

  Pruned s = prune(g, p);
  Core core = contract_chains(g, s);
  if (core.kept.empty()) throw std::logic_error("find_binocular: pruning emptied the graph");

  // round 1: the core itself, vertices renumbered in ascending original order
  std::vector<int> index_of(g.num_vertices, -1);
  for (size_t i = 0; i < core.kept.size(); ++i) index_of[core.kept[i]] = static_cast<int>(i);
  RoundGraph r1;
  r1.n = static_cast<int>(core.kept.size());
  for (int e = 0; e < static_cast<int>(core.edges.size()); ++e) {
    int a = index_of[core.edges[e].a], b = index_of[core.edges[e].b];
    r1.edges.push_back(MgEdge{std::min(a, b), std::max(a, b)});
    r1.carrier.push_back(e);
  }
  std::vector<int> first_cycle;  // core edge ids
  {
    auto round_edges = cycle_through_root(r1, 0);
    for (int e : round_edges) first_cycle.push_back(r1.carrier[e]);
  }
  std::set<int> first_set(first_cycle.begin(), first_cycle.end());
  std::set<int> squashed;  // core vertices merged into the round-2 root
  for (int e : first_cycle) {
    squashed.insert(core.edges[e].a);
    squashed.insert(core.edges[e].b);
  }

  // round 2: contract the first cycle to vertex 0 and search again
  RoundGraph r2;
  std::vector<int> index2(g.num_vertices, -1);
  int next = 1;
  for (int v : core.kept) {
    if (!squashed.count(v)) index2[v] = next++;
  }
  r2.n = next;
  for (int e = 0; e < static_cast<int>(core.edges.size()); ++e) {
    if (first_set.count(e)) continue;
    int a = squashed.count(core.edges[e].a) ? 0 : index2[core.edges[e].a];
    int b = squashed.count(core.edges[e].b) ? 0 : index2[core.edges[e].b];
    r2.edges.push_back(MgEdge{std::min(a, b), std::max(a, b)});
    r2.carrier.push_back(e);
  }
  std::vector<int> second_cycle;
  {
    auto round_edges = cycle_through_root(r2, 0);
    for (int e : round_edges) second_cycle.push_back(r2.carrier[e]);
  }

  std::vector<int> original_edges;
  for (int e : first_cycle) {
    original_edges.insert(original_edges.end(), core.edges[e].orig.begin(), core.edges[e].orig.end());
  }
  for (int e : second_cycle) {
    original_edges.insert(original_edges.end(), core.edges[e].orig.begin(), core.edges[e].orig.end());
  }
  Binocular b = make_binocular(g, std::move(original_edges));
  ValidationResult check = validate_binocular(g, b);
  if (!check) throw std::logic_error("find_binocular produced an invalid result: " + check.message());
  return b;
}

LoopReduction loop_reduce(const Multigraph& g) {
  LoopReduction r;
  r.removed.assign(g.num_vertices, 0);
  for (const MgEdge& e : g.edges) {
    if (e.is_loop()) r.removed[e.u] = 1;
  }
  std::vector<int> index(g.num_vertices, -1);
  for (int v = 0; v < g.num_vertices; ++v) {
    if (!r.removed[v]) {
      index[v] = r.reduced.num_vertices++;
      r.vertex_origin.push_back(v);
    }
  }
  for (int e = 0; e < g.num_edges(); ++e) {
    int u = g.edges[e].u, v = g.edges[e].v;
    if (r.removed[u] && r.removed[v]) continue;
    int a = r.removed[u] ? index[v] : index[u];
    int b = r.removed[v] ? index[u] : index[v];
    if (r.removed[u]) {
      r.reduced.edges.push_back(MgEdge{index[v], index[v]});
    } else if (r.removed[v]) {
      r.reduced.edges.push_back(MgEdge{index[u], index[u]});
    } else {
      r.reduced.edges.push_back(MgEdge{std::min(a, b), std::max(a, b)});
    }
    r.edge_origin.push_back(e);
  }
  return r;
}

Binocular lift_improvement(const Multigraph& g, const LoopReduction& r, const Binocular& reduced_b) {
  ValidationResult ok = validate_binocular(r.reduced, reduced_b);
  if (!ok) throw InvalidInputError("lift_improvement: input is not a binocular: " + ok.message());

  // find a loop of g on a deleted vertex (one exists by construction)
  auto loop_on = [&](int v) {
    for (int e = 0; e < g.num_edges(); ++e) {
      if (g.edges[e].is_loop() && g.edges[e].u == v) return e;
    }
    throw std::logic_error("lift_improvement: deleted vertex without a loop");
  };

  std::vector<int> lifted;
  std::vector<std::pair<int, int>> half_edges;  // (origin edge, deleted endpoint)
  for (int e : reduced_b.edge_indices) {
    int orig = r.edge_origin[e];
    if (!r.reduced.edges[e].is_loop()) {
      lifted.push_back(orig);
      continue;
    }
    int u = g.edges[orig].u, v = g.edges[orig].v;
    int gone = r.removed[u] ? u : v;
    half_edges.emplace_back(orig, gone);
  }
  if (half_edges.size() > 2) {
    throw std::logic_error("lift_improvement: more than two independent loops");
  }
  for (const auto& [orig, gone] : half_edges) lifted.push_back(orig);
  if (half_edges.size() == 1) {
    lifted.push_back(loop_on(half_edges[0].second));
  } else if (half_edges.size() == 2) {
    lifted.push_back(loop_on(half_edges[0].second));
    if (half_edges[0].second != half_edges[1].second) {
      lifted.push_back(loop_on(half_edges[1].second));
    }
  }

  Binocular out = make_binocular(g, std::move(lifted));
  ValidationResult check = validate_binocular(g, out);
  if (!check) throw std::logic_error("lift_improvement produced an invalid result: " + check.message());
  if (out.edge_indices.size() > reduced_b.edge_indices.size() + 2) {
    throw std::logic_error("lift_improvement exceeded the two-extra-edges budget");
  }
  return out;
}

}  // namespace setpack
