#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "setpack/aux_graph.hpp"
#include "setpack/errors.hpp"
#include "setpack/gap_construction.hpp"
#include "setpack/instance.hpp"
#include "setpack/oracle.hpp"
#include "setpack/rng.hpp"

using namespace setpack;

namespace {

// independent partition counter: the lowest remaining element picks its two
// partners, recurse
long count_partitions(std::vector<int>& pool) {
  if (pool.empty()) return 1;
  long total = 0;
  const int first = pool[0];
  std::vector<int> rest(pool.begin() + 1, pool.end());
  for (size_t i = 0; i < rest.size(); ++i) {
    for (size_t j = i + 1; j < rest.size(); ++j) {
      std::vector<int> next;
      for (size_t x = 0; x < rest.size(); ++x)
        if (x != i && x != j) next.push_back(rest[x]);
      total += count_partitions(next);
    }
  }
  (void)first;
  return total;
}

long count_partitions_of(int m) {
  std::vector<int> pool(m);
  for (int i = 0; i < m; ++i) pool[i] = i;
  return count_partitions(pool);
}

// all size-s subsets of {0..universe-1} in lexicographic order
std::vector<std::vector<int>> combinations(int universe, int s) {
  std::vector<std::vector<int>> out;
  std::vector<int> idx(s);
  for (int i = 0; i < s; ++i) idx[i] = i;
  if (s > universe) return out;
  while (true) {
    out.push_back(idx);
    int i = s - 1;
    while (i >= 0 && idx[i] == universe - s + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

StabilityCertificate brute_certificate(int k, int n, const std::vector<Triple>& r, int max_size) {
  StabilityCertificate cert;
  for (int s = 1; s <= max_size; ++s) {
    for (const auto& a : combinations(3 * n, s)) {
      if (is_unstable(k, n, r, a)) {
        cert.certified_up_to = s - 1;
        cert.witness = a;
        return cert;
      }
    }
  }
  cert.certified_up_to = max_size;
  return cert;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("triple_partition_count small values") {
  CHECK(triple_partition_count(0) == 1);
  CHECK(triple_partition_count(3) == 1);
  CHECK(triple_partition_count(6) == 10);
  CHECK(triple_partition_count(9) == 280);
  CHECK(triple_partition_count(12) == 15400);
  CHECK_THROWS_AS(triple_partition_count(-3), InvalidInputError);
  CHECK_THROWS_AS(triple_partition_count(4), InvalidInputError);
}

TEST_CASE("triple_partition_count agrees with explicit enumeration") {
  for (int m = 0; m <= 12; m += 3) {
    CHECK(triple_partition_count(m) == count_partitions_of(m));
  }
}

TEST_CASE("occurrence_probability is a partition-count ratio") {
  for (auto [k, n, a] : {std::array<int, 3>{3, 2, 1}, {3, 2, 6}, {4, 1, 2}, {5, 1, 3}}) {
    BigRat expect(triple_partition_count(3L * k * n - 3 * a), triple_partition_count(3L * k * n));
    expect.canonicalize();
    CHECK(occurrence_probability(k, n, a) == expect);
  }
  CHECK(occurrence_probability(3, 2, 0) == BigRat(1));
  CHECK_THROWS_AS(occurrence_probability(2, 2, 1), InvalidInputError);
  CHECK_THROWS_AS(occurrence_probability(3, 2, 7), InvalidInputError);
}

TEST_CASE("partition counts tie out with binomials") {
  // choosing a triples of a partition == choosing their elements first:
  // tau(3kn) * C(kn, a) == C(3kn, 3a) * tau(3a) * tau(3kn - 3a)
  for (auto [k, n] : {std::array<int, 2>{3, 1}, {3, 2}, {4, 1}, {5, 1}}) {
    const long m = 3L * k * n;
    for (int a = 0; a <= k * n; ++a) {
      BigInt lhs = triple_partition_count(m) * binomial(static_cast<long>(k) * n, a);
      BigInt rhs = binomial(m, 3L * a) * triple_partition_count(3L * a) *
                   triple_partition_count(m - 3L * a);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("random_triple_partition is a deterministic uniform partition") {
  auto r1 = random_triple_partition(12, 77);
  auto r2 = random_triple_partition(12, 77);
  auto r3 = random_triple_partition(12, 78);
  REQUIRE(r1.size() == 4);
  CHECK(r1 == r2);
  CHECK(r1 != r3);
  std::vector<char> seen(12, 0);
  for (const Triple& t : r1) {
    CHECK(t[0] < t[1]);
    CHECK(t[1] < t[2]);
    for (int e : t) {
      REQUIRE(e >= 0);
      REQUIRE(e < 12);
      CHECK(!seen[e]);
      seen[e] = 1;
    }
  }
  CHECK_THROWS_AS(random_triple_partition(10, 1), InvalidInputError);
}

TEST_CASE("random_triple_partition draws every partition equally often") {
  // 6 elements have 10 partitions; chi-squared against uniform at df 9
  std::map<std::string, int> counts;
  const int samples = 20000;
  for (int i = 0; i < samples; ++i) {
    auto r = random_triple_partition(6, Rng::derive(5150, i));
    std::sort(r.begin(), r.end());
    std::ostringstream key;
    for (const Triple& t : r) key << t[0] << ',' << t[1] << ',' << t[2] << ';';
    ++counts[key.str()];
  }
  REQUIRE(counts.size() == 10);
  const double expect = samples / 10.0;
  double chi2 = 0;
  for (const auto& [key, obs] : counts) chi2 += (obs - expect) * (obs - expect) / expect;
  CHECK(chi2 < 27.877);  // p = 0.001 cutoff
}

TEST_CASE("is_unstable counts the triples inside a block collection") {
  const int k = 3, n = 2;
  // the partition that equals the blocks themselves
  std::vector<Triple> aligned;
  for (int b = 0; b < 6; ++b) aligned.push_back({3 * b, 3 * b + 1, 3 * b + 2});
  CHECK(is_unstable(k, n, aligned, {0}));
  CHECK(is_unstable(k, n, aligned, {0, 1}));
  CHECK(is_unstable(k, n, aligned, {5}));

  // triples straddle block pairs: single blocks hold nothing, pairs differ
  std::vector<Triple> paired = {{0, 1, 3}, {2, 4, 5}, {6, 7, 9}, {8, 10, 11}, {12, 13, 15}, {14, 16, 17}};
  CHECK(!is_unstable(k, n, paired, {0}));
  CHECK(!is_unstable(k, n, paired, {1}));
  CHECK(is_unstable(k, n, paired, {0, 1}));
  CHECK(!is_unstable(k, n, paired, {1, 2}));

  // every triple spans three blocks: nothing smaller than three blocks works
  std::vector<Triple> spread = {{0, 3, 6}, {1, 4, 7}, {2, 5, 8}, {9, 12, 15}, {10, 13, 16}, {11, 14, 17}};
  for (int b = 0; b < 6; ++b) CHECK(!is_unstable(k, n, spread, {b}));
  CHECK(!is_unstable(k, n, spread, {0, 1}));
  CHECK(is_unstable(k, n, spread, {0, 1, 2}));
  CHECK(is_unstable(k, n, spread, {3, 4, 5}));
  CHECK(!is_unstable(k, n, spread, {2, 3, 4}));

  CHECK_THROWS_AS(is_unstable(k, n, spread, {6}), InvalidInputError);
  CHECK_THROWS_AS(is_unstable(k, n, spread, {0, 0}), InvalidInputError);
  std::vector<Triple> short_r = {{0, 1, 2}};
  CHECK_THROWS_AS(is_unstable(k, n, short_r, {0}), InvalidInputError);
}

TEST_CASE("certify_stability matches a brute-force scan") {
  std::vector<Triple> spread = {{0, 3, 6}, {1, 4, 7}, {2, 5, 8}, {9, 12, 15}, {10, 13, 16}, {11, 14, 17}};
  StabilityCertificate c2 = certify_stability(3, 2, spread, 2);
  CHECK(c2.certified_up_to == 2);
  CHECK(!c2.witness);
  StabilityCertificate c3 = certify_stability(3, 2, spread, 3);
  CHECK(c3.certified_up_to == 2);
  REQUIRE(c3.witness);
  CHECK(*c3.witness == std::vector<int>{0, 1, 2});  // lexicographically first

  for (int seed = 0; seed < 20; ++seed) {
    auto r = random_triple_partition(18, seed);
    for (int max_size = 1; max_size <= 4; ++max_size) {
      StabilityCertificate got = certify_stability(3, 2, r, max_size);
      StabilityCertificate want = brute_certificate(3, 2, r, max_size);
      CHECK(got.certified_up_to == want.certified_up_to);
      CHECK(got.witness == want.witness);
    }
  }
  CHECK_THROWS_AS(certify_stability(3, 2, spread, 7), InvalidInputError);
}

TEST_CASE("certify_stability parallel equals serial") {
  for (int seed = 40; seed < 45; ++seed) {
    auto r = random_triple_partition(27, seed);  // k=3, n=3
    StabilityCertificate s1 = certify_stability(3, 3, r, 4, 1);
    StabilityCertificate s2 = certify_stability(3, 3, r, 4, 2);
    CHECK(s1.certified_up_to == s2.certified_up_to);
    CHECK(s1.witness == s2.witness);
  }
}

TEST_CASE("certify_stability respects its budget") {
  auto r = random_triple_partition(36, 2);  // k=3, n=4: 12 blocks
  Budget tiny;
  tiny.max_nodes = 40;
  tiny.max_candidates = 40;
  CHECK_THROWS_AS(certify_stability(3, 4, r, 6, 1, tiny), BudgetError);
}

TEST_CASE("expected_unstable_bound components") {
  for (auto [k, n, a] : {std::array<int, 3>{3, 2, 1}, {3, 4, 2}, {4, 3, 2}, {5, 2, 3}}) {
    UnstableBound b = expected_unstable_bound(k, n, a);
    BigRat expect(binomial(3L * n, a) * binomial(static_cast<long>(k) * a, 3L * a) *
                      binomial(static_cast<long>(k) * n, a),
                  binomial(3L * k * n, 3L * a));
    expect.canonicalize();
    CHECK(b.exact == expect);
    const double closed = std::pow(std::exp(5.0) * k * a / (9.0 * n), a);
    CHECK(b.closed_form == doctest::Approx(closed).epsilon(1e-9));
  }
  // more triples than the partition holds: the event is impossible
  CHECK(expected_unstable_bound(3, 1, 4).exact == BigRat(0));
  CHECK_THROWS_AS(expected_unstable_bound(2, 1, 1), InvalidInputError);
}

TEST_CASE("exact expectation stays below the closed form") {
  for (int k = 3; k <= 5; ++k)
    for (int n = 1; n <= 8; ++n)
      for (int a = 1; a <= std::min(4, k * n); ++a) CHECK(exact_bound_below_closed_form(k, n, a));
}

TEST_CASE("gap instance structure at k=3, n=2") {
  GapParams p;
  p.k = 3;
  p.n = 2;
  p.t = 2;
  p.seed = 11;
  GapInstance gi = generate_gap_instance(p);
  CHECK(gi.instance.k == 3);
  CHECK(gi.instance.ground_size == 18);
  CHECK(gi.instance.num_sets() == 12);
  CHECK(gi.blocks == std::vector<SetId>{0, 1, 2, 3, 4, 5});
  CHECK(gi.triples == std::vector<SetId>{6, 7, 8, 9, 10, 11});
  CHECK(gi.certified_t == 2);
  CHECK(gi.seed == 11);
  CHECK(gi.rejections >= 0);

  // blocks cover the ground in order; triples re-cover it
  for (int b = 0; b < 6; ++b) {
    CHECK(gi.instance.set(b).elements == std::vector<ElementId>{3 * b, 3 * b + 1, 3 * b + 2});
  }
  CHECK(is_packing(gi.instance, gi.blocks));
  CHECK(is_packing(gi.instance, gi.triples));

  // the certificate translates into search-level stability
  Packing blocks{gi.blocks};
  AuxMultigraph g = build_aux_graph(gi.instance, blocks, true);
  CHECK(!naive_canonical_search(gi.instance, blocks, g, gi.certified_t).has_value());

  // the padded triples are optimal: 18 elements cannot hold more than 6 triples
  ExactPackingResult opt = exact_max_packing(gi.instance);
  REQUIRE(opt.proven_optimal);
  CHECK(opt.packing.size() == 6);

  // same parameters, same instance
  GapInstance again = generate_gap_instance(p);
  CHECK(instance_digest(again.instance) == instance_digest(gi.instance));
  CHECK(again.rejections == gi.rejections);
}

TEST_CASE("gap instance at k=6 doubles the optimum") {
  GapParams p;
  p.k = 6;
  p.n = 2;
  p.t = 2;
  p.seed = 3;
  GapInstance gi = generate_gap_instance(p);
  CHECK(gi.instance.k == 6);
  // 36 block elements plus 3 fresh padding elements per triple
  CHECK(gi.instance.ground_size == 36 + 12 * 3);
  CHECK(is_packing(gi.instance, gi.blocks));
  CHECK(is_packing(gi.instance, gi.triples));
  CHECK(gi.triples.size() == 2 * gi.blocks.size());  // ratio k/3
  Packing blocks{gi.blocks};
  AuxMultigraph g = build_aux_graph(gi.instance, blocks, true);
  CHECK(!naive_canonical_search(gi.instance, blocks, g, gi.certified_t).has_value());
}

TEST_CASE("gap generation reports hopeless parameters") {
  // with a single triple of blocks, the whole-ground collection is always
  // unstable, so certification at t = 3 cannot succeed
  GapParams p;
  p.k = 3;
  p.n = 1;
  p.t = 3;
  p.max_attempts = 5;
  CHECK_THROWS_AS(generate_gap_instance(p), BudgetError);
}

TEST_CASE("gap metadata sidecar") {
  GapParams p;
  p.k = 3;
  p.n = 2;
  p.t = 2;
  p.seed = 1;
  GapInstance gi = generate_gap_instance(p);
  auto path = (std::filesystem::temp_directory_path() / "setpack_meta_test.txt").string();
  write_gap_metadata(gi, path);
  std::ostringstream expect;
  expect << "k = 3\nn = 2\nt_certified = 2\nseed = 1\nrejections = " << gi.rejections << "\n";
  CHECK(slurp(path) == expect.str());
  std::remove(path.c_str());
}
