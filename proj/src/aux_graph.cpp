#include "setpack/aux_graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "setpack/errors.hpp"

namespace setpack {

VertexId AuxMultigraph::vertex_of(SetId id) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), id);
  if (it == vertices.end() || *it != id) return -1;
  return static_cast<VertexId>(it - vertices.begin());
}

const char* shape_name(ImprovementShape s) {
  switch (s) {
    case ImprovementShape::TwoCyclesSharedVertex:
      return "two_cycles_shared_vertex";
    case ImprovementShape::TwoCyclesJoinedByPath:
      return "two_cycles_joined_by_path";
    case ImprovementShape::ThreePaths:
      return "three_paths";
  }
  return "?";
}

std::string ValidationResult::message() const {
  std::string out;
  for (const auto& r : reasons) {
    if (!out.empty()) out += "; ";
    out += r;
  }
  return out;
}

namespace {

// Ascending list of packing members the given set conflicts with.
std::vector<VertexId> conflict_vertices(const Instance& inst, const AuxMultigraph& g, const KSet& s) {
  std::vector<VertexId> hit;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (conflicts(s, inst.set(g.vertices[v]))) hit.push_back(v);
  }
  return hit;
}

struct UnionFind {
  std::vector<int> parent;

  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }

  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

AuxMultigraph build_aux_graph(const Instance& inst, const Packing& a, bool include_self_loops) {
  if (!is_packing(inst, a.ids)) throw InvalidInputError("build_aux_graph: not a packing");

  AuxMultigraph g;
  g.vertices = a.ids;
  g.incident.resize(g.num_vertices());

  // element -> owning packing member, for O(k) conflict lookups
  std::vector<VertexId> owner(inst.ground_size, -1);
  for (int v = 0; v < g.num_vertices(); ++v) {
    for (ElementId e : inst.set(g.vertices[v]).elements) owner[e] = v;
  }

  auto add_edge = [&](SetId label, VertexId u, VertexId v) {
    int idx = g.num_edges();
    g.edges.push_back(AuxEdge{label, std::min(u, v), std::max(u, v)});
    g.incident[u].push_back(idx);
    if (u != v) g.incident[v].push_back(idx);
  };

  for (SetId x = 0; x < inst.num_sets(); ++x) {
    if (a.contains(x)) continue;
    VertexId first = -1, second = -1;
    int count = 0;
    for (ElementId e : inst.set(x).elements) {
      VertexId v = owner[e];
      if (v < 0 || v == first || v == second) continue;
      if (count == 0) {
        first = v;
      } else if (count == 1) {
        second = v;
      }
      ++count;
    }
    if (count == 1) {
      add_edge(x, first, first);
    } else if (count == 2) {
      add_edge(x, first, second);
    }
  }
  if (include_self_loops) {
    for (int v = 0; v < g.num_vertices(); ++v) add_edge(g.vertices[v], v, v);
  }
  return g;
}

ValidationResult validate_improvement(const Instance& inst, const Packing& a, const AuxMultigraph& g,
                                      const ImprovementCandidate& cand) {
  ValidationResult res;
  auto fail = [&res](std::string why) {
    res.ok = false;
    res.reasons.push_back(std::move(why));
  };

  if (g.vertices != a.ids) {
    fail("graph vertices disagree with the packing");
    return res;
  }
  if (cand.edge_indices.empty()) {
    fail("no edges");
    return res;
  }
  std::set<int> distinct;
  for (int e : cand.edge_indices) {
    if (e < 0 || e >= g.num_edges()) {
      fail("edge index " + std::to_string(e) + " out of range");
      return res;
    }
    if (!distinct.insert(e).second) fail("edge index " + std::to_string(e) + " repeated");
  }

  // Endpoints must be the label's exact conflict set within the packing, and
  // labels must be pairwise disjoint (a packing member used as a loop label
  // conflicts only with itself, so it cannot ride along with a set meeting it).
  std::set<ElementId> label_elements;
  std::set<SetId> labels;
  std::set<VertexId> covered;
  for (int e : cand.edge_indices) {
    const AuxEdge& edge = g.edges[e];
    const KSet& label = inst.set(edge.label);
    if (!labels.insert(edge.label).second) fail("label " + std::to_string(edge.label) + " repeated");
    std::vector<VertexId> want = conflict_vertices(inst, g, label);
    std::vector<VertexId> got{edge.u};
    if (edge.v != edge.u) got.push_back(edge.v);
    std::sort(got.begin(), got.end());
    if (want != got) fail("edge " + std::to_string(e) + " endpoints disagree with label conflicts");
    bool overlap = false;
    for (ElementId el : label.elements) {
      if (!label_elements.insert(el).second) overlap = true;
    }
    if (overlap) fail("label of edge " + std::to_string(e) + " overlaps an earlier label");
    covered.insert(edge.u);
    covered.insert(edge.v);
  }

  std::vector<VertexId> claimed = cand.covered_vertices;
  std::sort(claimed.begin(), claimed.end());
  if (claimed != std::vector<VertexId>(covered.begin(), covered.end())) {
    fail("covered_vertices does not match the edges' endpoints");
  }

  UnionFind uf(g.num_vertices());
  for (int e : cand.edge_indices) uf.unite(g.edges[e].u, g.edges[e].v);
  bool connected = true;
  for (VertexId v : covered) {
    if (uf.find(v) != uf.find(*covered.begin())) connected = false;
  }
  if (!connected) fail("edge set is not connected");

  if (cand.edge_indices.size() < covered.size() + 1) {
    fail("needs at least |covered|+1 edges to hold two independent cycles");
  }
  return res;
}

Packing apply_improvement(const Instance& inst, const Packing& a, const AuxMultigraph& g,
                          const ImprovementCandidate& cand) {
  ValidationResult res = validate_improvement(inst, a, g, cand);
  if (!res) throw InvalidInputError("apply_improvement: " + res.message());

  std::set<SetId> out(a.ids.begin(), a.ids.end());
  for (int e : cand.edge_indices) {
    out.erase(g.vertices[g.edges[e].u]);
    out.erase(g.vertices[g.edges[e].v]);
  }
  for (int e : cand.edge_indices) out.insert(g.edges[e].label);

  Packing result;
  result.ids.assign(out.begin(), out.end());
  if (!is_packing(inst, result.ids)) {
    throw InvalidInputError("apply_improvement produced a non-packing; candidate was invalid");
  }
  return result;
}

std::string to_dot(const AuxMultigraph& g) {
  std::ostringstream ss;
  ss << "graph aux {\n";
  for (int v = 0; v < g.num_vertices(); ++v) {
    ss << "  v" << v << " [label=\"S" << g.vertices[v] << "\"];\n";
  }
  for (const AuxEdge& e : g.edges) {
    ss << "  v" << e.u << " -- v" << e.v << " [label=\"X" << e.label << "\"];\n";
  }
  ss << "}\n";
  return ss.str();
}

}  // namespace setpack
