#include "setpack/gap_construction.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "setpack/errors.hpp"
#include "setpack/rng.hpp"

namespace setpack {

BigInt triple_partition_count(long m) {
  if (m < 0 || m % 3 != 0) {
    throw InvalidInputError("triple_partition_count: m must be non-negative and divisible by 3");
  }
  BigInt denom = pow_int(BigInt(6), static_cast<unsigned long>(m / 3)) *
                 factorial(static_cast<unsigned long>(m / 3));
  BigInt num = factorial(static_cast<unsigned long>(m));
  return num / denom;  // exact by construction
}

BigRat occurrence_probability(int k, int n, int a) {
  if (k < 3 || n < 1 || a < 0 || a > k * n) {
    throw InvalidInputError("occurrence_probability: need k >= 3, n >= 1, 0 <= a <= k*n");
  }
  long m = 3L * k * n;
  BigRat p(triple_partition_count(m - 3L * a), triple_partition_count(m));
  p.canonicalize();
  return p;
}

std::vector<Triple> random_triple_partition(int num_elements, uint64_t seed) {
  if (num_elements < 0 || num_elements % 3 != 0) {
    throw InvalidInputError("random_triple_partition: element count must be divisible by 3");
  }
  std::vector<ElementId> perm(num_elements);
  std::iota(perm.begin(), perm.end(), 0);
  Rng rng(seed);
  rng.shuffle(perm);
  std::vector<Triple> out(num_elements / 3);
  for (size_t i = 0; i < out.size(); ++i) {
    Triple t{perm[3 * i], perm[3 * i + 1], perm[3 * i + 2]};
    std::sort(t.begin(), t.end());
    out[i] = t;
  }
  return out;
}

namespace {

void check_partition(int k, int n, const std::vector<Triple>& r) {
  long m = 3L * k * n;
  if (static_cast<long>(r.size()) * 3 != m) {
    throw InvalidInputError("triple list does not cover 3*k*n elements");
  }
  std::vector<char> seen(m, 0);
  for (const Triple& t : r) {
    for (ElementId e : t) {
      if (e < 0 || e >= m || seen[e]) throw InvalidInputError("triple list is not a partition");
      seen[e] = 1;
    }
  }
}

// triple -> distinct owning blocks (owner of element e is e / k)
std::vector<std::vector<int>> owner_sets(int k, const std::vector<Triple>& r) {
  std::vector<std::vector<int>> owners(r.size());
  for (size_t i = 0; i < r.size(); ++i) {
    for (ElementId e : r[i]) owners[i].push_back(e / k);
    std::sort(owners[i].begin(), owners[i].end());
    owners[i].erase(std::unique(owners[i].begin(), owners[i].end()), owners[i].end());
  }
  return owners;
}

long count_inside(const std::vector<std::vector<int>>& owners, const std::vector<char>& in_a) {
  long count = 0;
  for (const auto& os : owners) {
    bool inside = true;
    for (int b : os) inside = inside && in_a[b];
    count += inside;
  }
  return count;
}

}  // namespace

bool is_unstable(int k, int n, const std::vector<Triple>& r, const std::vector<int>& a) {
  check_partition(k, n, r);
  std::vector<char> in_a(3 * n, 0);
  std::set<int> distinct;
  for (int b : a) {
    if (b < 0 || b >= 3 * n) throw InvalidInputError("is_unstable: block index out of range");
    if (!distinct.insert(b).second) throw InvalidInputError("is_unstable: repeated block index");
    in_a[b] = 1;
  }
  return count_inside(owner_sets(k, r), in_a) >= static_cast<long>(a.size());
}

namespace {

// lexicographic combinations of {0..n-1} taken a at a time, by rank
std::vector<long> pascal_row_sums(int n, int a) {
  // binom(n - 1 - first, a - 1) style counts are computed on demand instead;
  // here we just precompute binom values up to n.
  std::vector<long> flat((n + 1) * (a + 1), 0);
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= std::min(i, a); ++j) {
      long v;
      if (j == 0) {
        v = 1;
      } else if (j > i) {
        v = 0;
      } else {
        v = flat[(i - 1) * (a + 1) + j - 1] + flat[(i - 1) * (a + 1) + j];
      }
      flat[i * (a + 1) + j] = v;
    }
  }
  return flat;
}

std::vector<int> unrank_combination(const std::vector<long>& binom, int n, int a, long rank) {
  std::vector<int> combo;
  int next = 0;
  for (int slot = a; slot >= 1; --slot) {
    for (int v = next; v <= n - slot; ++v) {
      long block = binom[(n - 1 - v) * (a + 1) + (slot - 1)];
      if (rank < block) {
        combo.push_back(v);
        next = v + 1;
        break;
      }
      rank -= block;
    }
  }
  return combo;
}

}  // namespace

StabilityCertificate certify_stability(int k, int n, const std::vector<Triple>& r, int max_size, int jobs,
                                       const Budget& budget) {
  if (max_size < 0 || max_size > 3 * n) {
    throw InvalidInputError("certify_stability: max_size must lie in [0, 3n]");
  }
  check_partition(k, n, r);
  const auto owners = owner_sets(k, r);
  const int blocks = 3 * n;

  StabilityCertificate cert;
  long spent = 0;
  for (int a = 1; a <= max_size; ++a) {
    // budget check in big integers, before the long-valued table exists
    if (BigInt(spent) + binomial(blocks, a) > BigInt(budget.max_candidates) ||
        binomial(blocks, std::min(a, blocks / 2)) > BigInt(std::numeric_limits<long>::max() / 2)) {
      throw BudgetError("certify_stability: budget exhausted at collection size " + std::to_string(a));
    }
    auto binom_table = pascal_row_sums(blocks, a);
    const long total = binom_table[blocks * (a + 1) + a];
    spent += total;

    long hit = total;  // rank of the first unstable collection, if any
    if (jobs <= 1) {
      std::vector<char> in_a(blocks, 0);
      std::vector<int> combo(a);
      for (int i = 0; i < a; ++i) combo[i] = i;
      for (long rank = 0; rank < total; ++rank) {
        for (int b : combo) in_a[b] = 1;
        bool unstable = count_inside(owners, in_a) >= a;
        for (int b : combo) in_a[b] = 0;
        if (unstable) {
          hit = rank;
          break;
        }
        // next combination
        int i = a - 1;
        while (i >= 0 && combo[i] == blocks - a + i) --i;
        if (i < 0) break;
        ++combo[i];
        for (int j = i + 1; j < a; ++j) combo[j] = combo[j - 1] + 1;
      }
    } else {
#pragma omp parallel num_threads(jobs)
      {
        std::vector<char> in_a(blocks, 0);
#pragma omp for schedule(dynamic, 1024)
        for (long rank = 0; rank < total; ++rank) {
          // hit only ever shrinks; a stale read just wastes one check
          long seen;
#pragma omp atomic read
          seen = hit;
          if (rank > seen) continue;
          auto combo = unrank_combination(binom_table, blocks, a, rank);
          for (int b : combo) in_a[b] = 1;
          bool unstable = count_inside(owners, in_a) >= a;
          for (int b : combo) in_a[b] = 0;
          if (unstable) {
#pragma omp critical
            if (rank < hit) hit = rank;
          }
        }
      }
    }

    if (hit < total) {
      cert.witness = unrank_combination(binom_table, blocks, a, hit);
      return cert;
    }
    cert.certified_up_to = a;
  }
  return cert;
}

UnstableBound expected_unstable_bound(int k, int n, int a) {
  if (k < 3 || n < 1 || a < 1) {
    throw InvalidInputError("expected_unstable_bound: need k >= 3, n >= 1, a >= 1");
  }
  UnstableBound out;
  if (a > static_cast<long>(k) * n) {
    out.exact = 0;  // more triples than the partition has
  } else {
    BigInt num = binomial(3L * n, a) * binomial(static_cast<long>(k) * a, 3L * a) *
                 binomial(static_cast<long>(k) * n, a);
    out.exact = BigRat(num, binomial(3L * k * n, 3L * a));
    out.exact.canonicalize();
  }
  const double e5 = 148.4131591025766;
  out.closed_form = std::pow(e5 * k * a / (9.0 * n), a);
  return out;
}

bool exact_bound_below_closed_form(int k, int n, int a) {
  UnstableBound b = expected_unstable_bound(k, n, a);
  // replacing e^5 by a smaller rational only shrinks the closed form, so a
  // pass here certifies the real inequality
  BigRat base = euler5_lower_bound() * k * a / (9 * n);
  BigRat closed_lower = 1;
  for (int i = 0; i < a; ++i) closed_lower *= base;
  closed_lower.canonicalize();
  return b.exact <= closed_lower;
}

GapInstance generate_gap_instance(const GapParams& params) {
  if (params.k < 3) throw InvalidInputError("generate_gap_instance: k must be >= 3");
  if (params.n < 1) throw InvalidInputError("generate_gap_instance: n must be >= 1");
  if (params.t < 1) throw InvalidInputError("generate_gap_instance: t must be >= 1");
  if (params.max_attempts < 1) throw InvalidInputError("generate_gap_instance: max_attempts must be >= 1");

  const int k = params.k, n = params.n;
  for (int attempt = 0; attempt < params.max_attempts; ++attempt) {
    auto r = random_triple_partition(3 * k * n, Rng::derive(params.seed, attempt));
    StabilityCertificate cert = certify_stability(k, n, r, params.t, params.jobs);
    if (cert.witness) continue;

    std::vector<std::vector<ElementId>> raw;
    for (int b = 0; b < 3 * n; ++b) {
      std::vector<ElementId> block(k);
      std::iota(block.begin(), block.end(), b * k);
      raw.push_back(std::move(block));
    }
    std::vector<Triple> sorted_triples = r;
    std::sort(sorted_triples.begin(), sorted_triples.end());
    for (const Triple& t : sorted_triples) raw.emplace_back(t.begin(), t.end());

    GapInstance gi;
    gi.instance = pad_to_k(raw, k);
    gi.n = n;
    for (int b = 0; b < 3 * n; ++b) gi.blocks.push_back(b);
    for (int i = 0; i < k * n; ++i) gi.triples.push_back(3 * n + i);
    gi.certified_t = params.t;
    gi.seed = params.seed;
    gi.rejections = attempt;
    return gi;
  }

  std::ostringstream why;
  why << "generate_gap_instance: no stable partition in " << params.max_attempts
      << " attempts; expected unstable collections by size:";
  for (int a = 1; a <= params.t; ++a) {
    why << " " << a << ":" << expected_unstable_bound(params.k, params.n, a).closed_form;
  }
  why << " (shrink t or grow n)";
  throw BudgetError(why.str());
}

void write_gap_metadata(const GapInstance& gi, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInputError("cannot open metadata file: " + path);
  out << "k = " << gi.instance.k << '\n';
  out << "n = " << gi.n << '\n';
  out << "t_certified = " << gi.certified_t << '\n';
  out << "seed = " << gi.seed << '\n';
  out << "rejections = " << gi.rejections << '\n';
}

}  // namespace setpack
