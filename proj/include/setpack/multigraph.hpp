#pragma once

#include <vector>

#include "setpack/aux_graph.hpp"  // ValidationResult

namespace setpack {

struct MgEdge {
  int u = -1;
  int v = -1;

  bool is_loop() const { return u == v; }
};

// Undirected multigraph: loops and parallel edges welcome.  Vertices are
// 0..num_vertices-1; edges keep their index identity throughout.
struct Multigraph {
  int num_vertices = 0;
  std::vector<MgEdge> edges;

  int num_edges() const { return static_cast<int>(edges.size()); }
  void add_edge(int u, int v);
};

// vertex -> indices of incident edges (a loop appears once).
std::vector<std::vector<int>> incidence_lists(const Multigraph& g);

// Degree counts a loop twice.
std::vector<int> degrees(const Multigraph& g);

// A connected edge set with exactly two independent cycles, i.e. exactly
// |vertices| + 1 edges.
struct Binocular {
  std::vector<int> edge_indices;  // ascending
  std::vector<int> vertices;      // ascending union of endpoints
};

Binocular make_binocular(const Multigraph& g, std::vector<int> edge_indices);

ValidationResult validate_binocular(const Multigraph& g, const Binocular& b);

}  // namespace setpack
