#pragma once

#include <string>
#include <vector>

#include "setpack/instance.hpp"

namespace setpack {

using VertexId = int;  // index into AuxMultigraph::vertices

// Edge standing for one candidate set.  A candidate conflicting with exactly
// one packing member becomes a loop (u == v), one conflicting with exactly two
// becomes a connecting edge.  Candidates touching three or more members never
// appear: swapping them in cannot make a packing larger one piece at a time.
struct AuxEdge {
  SetId label = -1;
  VertexId u = -1;
  VertexId v = -1;

  bool is_loop() const { return u == v; }
};

struct AuxMultigraph {
  std::vector<SetId> vertices;  // packing members, ascending
  std::vector<AuxEdge> edges;
  std::vector<std::vector<int>> incident;  // vertex -> incident edge indices, loops listed once

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
  VertexId vertex_of(SetId id) const;  // -1 when id is not a vertex
};

enum class ImprovementShape {
  TwoCyclesSharedVertex,
  TwoCyclesJoinedByPath,
  ThreePaths,
};

const char* shape_name(ImprovementShape s);

// A connected set of edges with at least two independent cycles whose labels
// are pairwise disjoint.  Trading the covered packing members for the labels
// grows the packing by |edges| - |covered_vertices| >= 1.
struct ImprovementCandidate {
  std::vector<int> edge_indices;           // distinct indices into g.edges
  ImprovementShape shape = ImprovementShape::TwoCyclesSharedVertex;
  std::vector<VertexId> covered_vertices;  // ascending union of endpoints
};

struct ValidationResult {
  bool ok = true;
  std::vector<std::string> reasons;

  explicit operator bool() const { return ok; }
  std::string message() const;
};

// include_self_loops additionally places one loop per packing member, labeled
// by the member itself (it "conflicts with itself").  Those loops let a search
// drop a member while reusing it, which some improvements need.
AuxMultigraph build_aux_graph(const Instance& inst, const Packing& a, bool include_self_loops = true);

// Checks a candidate from scratch against the raw sets: distinct edges, every
// edge's endpoints equal to the exact conflict set of its label, pairwise
// disjoint labels, connectivity, and |edges| >= |covered| + 1.  Search results
// are never trusted without passing through here.
ValidationResult validate_improvement(const Instance& inst, const Packing& a, const AuxMultigraph& g,
                                      const ImprovementCandidate& cand);

// Removes the covered members, inserts the labels.  Throws InvalidInputError
// with the validator's reasons if the candidate does not check out.
Packing apply_improvement(const Instance& inst, const Packing& a, const AuxMultigraph& g,
                          const ImprovementCandidate& cand);

std::string to_dot(const AuxMultigraph& g);

}  // namespace setpack
