#pragma once

#include <vector>

#include "setpack/multigraph.hpp"

namespace setpack {

// Extracts a binocular covering few vertices from a dense multigraph.
// Requires p >= 1, at least one vertex, and p*|edges| >= (p+1)*|vertices|.
// For inputs with n >= 4 vertices the result covers at most
// 4*p*log2(n) - 1 vertices.  Deterministic: ties broken by vertex and edge
// indices throughout.
Binocular find_binocular(const Multigraph& g, int p);

// Result of deleting every vertex that carries a loop.  An edge losing one
// endpoint becomes a loop on the survivor; an edge losing both disappears.
struct LoopReduction {
  Multigraph reduced;
  std::vector<int> vertex_origin;  // reduced vertex -> original vertex
  std::vector<int> edge_origin;    // reduced edge -> original edge
  std::vector<char> removed;       // original vertex -> had a loop
};

LoopReduction loop_reduce(const Multigraph& g);

// Replays a binocular of the reduced graph inside the original graph.  Each
// loop of the reduced binocular is traced back to its half-deleted edge and
// completed with a loop of the deleted endpoint; at most two edges are added.
Binocular lift_improvement(const Multigraph& g, const LoopReduction& r, const Binocular& reduced_b);

}  // namespace setpack
