#include "setpack/multigraph.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "setpack/errors.hpp"

namespace setpack {

void Multigraph::add_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= num_vertices || v >= num_vertices) {
    throw InvalidInputError("add_edge: endpoint out of range");
  }
  edges.push_back(MgEdge{std::min(u, v), std::max(u, v)});
}

std::vector<std::vector<int>> incidence_lists(const Multigraph& g) {
  std::vector<std::vector<int>> inc(g.num_vertices);
  for (int e = 0; e < g.num_edges(); ++e) {
    inc[g.edges[e].u].push_back(e);
    if (!g.edges[e].is_loop()) inc[g.edges[e].v].push_back(e);
  }
  return inc;
}

std::vector<int> degrees(const Multigraph& g) {
  std::vector<int> deg(g.num_vertices, 0);
  for (const MgEdge& e : g.edges) {
    deg[e.u] += 1;
    deg[e.v] += 1;  // loops count twice by falling through both lines
  }
  return deg;
}

Binocular make_binocular(const Multigraph& g, std::vector<int> edge_indices) {
  std::sort(edge_indices.begin(), edge_indices.end());
  std::set<int> verts;
  for (int e : edge_indices) {
    if (e < 0 || e >= g.num_edges()) throw InvalidInputError("make_binocular: bad edge index");
    verts.insert(g.edges[e].u);
    verts.insert(g.edges[e].v);
  }
  Binocular b;
  b.edge_indices = std::move(edge_indices);
  b.vertices.assign(verts.begin(), verts.end());
  return b;
}

ValidationResult validate_binocular(const Multigraph& g, const Binocular& b) {
  ValidationResult res;
  auto fail = [&res](std::string why) {
    res.ok = false;
    res.reasons.push_back(std::move(why));
  };

  if (b.edge_indices.empty()) {
    fail("no edges");
    return res;
  }
  std::set<int> distinct;
  std::set<int> covered;
  for (int e : b.edge_indices) {
    if (e < 0 || e >= g.num_edges()) {
      fail("edge index out of range");
      return res;
    }
    if (!distinct.insert(e).second) fail("edge repeated");
    covered.insert(g.edges[e].u);
    covered.insert(g.edges[e].v);
  }
  std::vector<int> claimed = b.vertices;
  std::sort(claimed.begin(), claimed.end());
  if (claimed != std::vector<int>(covered.begin(), covered.end())) {
    fail("vertex list does not match edge endpoints");
  }

  // connectivity over the covered vertices
  std::map<int, int> parent;
  for (int v : covered) parent[v] = v;
  auto find = [&parent](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int e : b.edge_indices) {
    parent[find(g.edges[e].u)] = find(g.edges[e].v);
  }
  for (int v : covered) {
    if (find(v) != find(*covered.begin())) {
      fail("edge set is not connected");
      break;
    }
  }

  if (b.edge_indices.size() != covered.size() + 1) {
    fail("want exactly |vertices|+1 edges (two independent cycles)");
  }
  return res;
}

}  // namespace setpack
