#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "setpack/bigmath.hpp"
#include "setpack/instance.hpp"
#include "setpack/oracle.hpp"

namespace setpack {

using Triple = std::array<ElementId, 3>;

// Number of ways to split m labeled elements into unordered triples:
// m! / (6^(m/3) * (m/3)!).  Requires m >= 0 and m divisible by 3.
BigInt triple_partition_count(long m);

// Probability that `a` fixed disjoint triples all occur in a uniformly random
// triple partition of 3*k*n elements.
BigRat occurrence_probability(int k, int n, int a);

// Uniform partition of {0..num_elements-1} into triples, drawn by grouping a
// random permutation; every partition has the same number of preimages.
// Triples are sorted internally and listed in draw order.
std::vector<Triple> random_triple_partition(int num_elements, uint64_t seed);

// The ground set 0..3kn-1 is owned by 3n blocks of k consecutive elements.
// A collection `a` of block indices is unstable w.r.t. the triple partition r
// when at least |a| triples of r lie entirely inside the blocks of `a`.
bool is_unstable(int k, int n, const std::vector<Triple>& r, const std::vector<int>& a);

struct StabilityCertificate {
  int certified_up_to = 0;                  // no unstable collection of size <= this
  std::optional<std::vector<int>> witness;  // a smallest unstable collection otherwise
};

// Checks every block collection of size 1..max_size, smallest size first.
// Deterministic: the witness is the lexicographically first at its size.
StabilityCertificate certify_stability(int k, int n, const std::vector<Triple>& r, int max_size,
                                       int jobs = 1, const Budget& budget = {});

struct UnstableBound {
  BigRat exact;        // binom(3n,a) * binom(ka,3a) * binom(kn,a) / binom(3kn,3a)
  double closed_form;  // (e^5 * k * a / (9 * n))^a
};

// Expected number of unstable collections of size exactly a (union bound).
UnstableBound expected_unstable_bound(int k, int n, int a);

// exact <= closed_form, certified in rational arithmetic via a lower bound
// on e^5 (the closed form has far more slack than that bound gives up).
bool exact_bound_below_closed_form(int k, int n, int a);

struct GapParams {
  int k = 3;  // >= 3
  int n = 2;  // blocks come in 3n, triples in kn
  int t = 2;  // improvement size to certify against, >= 1
  uint64_t seed = 0;
  int max_attempts = 1000;
  int jobs = 1;
};

// Instance on which every block is k/3 times cheaper than the optimum: the 3n
// blocks form a packing no small canonical improvement can grow, while the kn
// padded triples pack perfectly.
struct GapInstance {
  Instance instance;
  int n = 0;
  std::vector<SetId> blocks;   // ids 0..3n-1
  std::vector<SetId> triples;  // ids 3n..3n+kn-1
  int certified_t = 0;
  uint64_t seed = 0;
  int rejections = 0;
};

// Rejection-samples triple partitions until one passes certify_stability.
// Throws BudgetError after max_attempts, reporting the expected number of
// unstable collections so the caller can shrink t or grow n.
GapInstance generate_gap_instance(const GapParams& params);

// Sidecar with one `key = value` line each for k, n, t_certified, seed,
// rejections.
void write_gap_metadata(const GapInstance& gi, const std::string& path);

}  // namespace setpack
