#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace setpack {

using ElementId = int;  // ground-set member, in [0, ground_size)
using SetId = int;      // index of a set within its instance

struct KSet {
  SetId id = -1;
  std::vector<ElementId> elements;  // strictly increasing

  bool contains(ElementId e) const;
};

struct Instance {
  int k = 0;
  int ground_size = 0;
  std::vector<KSet> sets;  // sets[i].id == i

  int num_sets() const { return static_cast<int>(sets.size()); }
  const KSet& set(SetId id) const { return sets[id]; }
};

// Sorted, duplicate-free list of set ids forming a packing of some instance.
struct Packing {
  std::vector<SetId> ids;

  int size() const { return static_cast<int>(ids.size()); }
  bool contains(SetId id) const;
};

// Two sets conflict when they share an element.  A set always conflicts with
// itself, even though a set never shares an element with "another" copy of
// itself; several searches below rely on that convention.
bool conflicts(const KSet& a, const KSet& b);

// True iff all ids are valid, duplicate-free and pairwise non-conflicting.
bool is_packing(const Instance& inst, const std::vector<SetId>& ids);

// Builds an instance from raw sets of size <= k by padding short sets with
// fresh elements (so padded sets never gain conflicts they did not already
// have).  Raw sets must be non-empty, free of repeated elements, and pairwise
// distinct.  Padding ids start above the largest raw element and are assigned
// in set order.
Instance pad_to_k(const std::vector<std::vector<ElementId>>& raw_sets, int k);

// Text format, one directive per line; '#' starts a comment, blank lines are
// ignored:
//   p setpack <k> <num_sets> <ground_size>
//   s <e1> ... <ek>         (exactly k strictly increasing elements)
Instance read_instance(std::istream& in);
Instance read_instance_file(const std::string& path);
void write_instance(const Instance& inst, std::ostream& out);
void write_instance_file(const Instance& inst, const std::string& path);

// FNV-1a over the canonical serialization; stable across runs and platforms.
std::string instance_digest(const Instance& inst);

// num_sets distinct uniformly random k-subsets of [0, ground_size).
Instance random_instance(int k, int num_sets, int ground_size, uint64_t seed);

}  // namespace setpack
