#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "setpack/aux_graph.hpp"
#include "setpack/color_coding.hpp"
#include "setpack/instance.hpp"
#include "setpack/oracle.hpp"

namespace setpack {

enum class SearchMode { ColorCoding, NaiveEnumeration };
enum class ColoringFamilyKind { SeededRandom, ExhaustiveRelevant };

// 4 * ceil(log2(num_sets)) + 1, never below 3; large enough for the
// guaranteed approximation ratio, small enough to keep runs polynomial.
int default_improvement_size(int num_sets);

struct SearchConfig {
  SearchMode mode = SearchMode::ColorCoding;
  ColoringFamilyKind family = ColoringFamilyKind::SeededRandom;
  int t = 0;          // improvement size cap; 0 picks the default above
  long trials = 1000;  // colorings per improvement search (random family)
  uint64_t seed = 0;
  bool include_self_loops = true;
  int jobs = 1;                    // threads for the coloring trial pool
  long exhaustive_cap = 1L << 20;  // largest exhaustive family accepted
  Budget oracle_budget;            // naive-mode enumeration budget
};

// Colorings addressed by index; trial i is reproducible regardless of which
// thread evaluates it, so parallel runs return exactly the serial answer.
class ColoringFamily {
 public:
  virtual ~ColoringFamily() = default;
  virtual long size() const = 0;
  virtual Coloring at(long index) const = 0;
};

// Fresh pseudo-random coloring per index.
class SeededRandomFamily : public ColoringFamily {
 public:
  SeededRandomFamily(int ground_size, int num_colors, uint64_t seed, long count);
  long size() const override { return count_; }
  Coloring at(long index) const override;

 private:
  int ground_size_;
  int num_colors_;
  uint64_t seed_;
  long count_;
};

// Every assignment of colors to the elements that occur in edge labels;
// elements outside that support keep color 0.  Trying the whole family makes
// the improvement search exact on small supports.
class ExhaustiveRelevantFamily : public ColoringFamily {
 public:
  ExhaustiveRelevantFamily(int ground_size, int num_colors, std::vector<ElementId> support, long cap);
  long size() const override { return count_; }
  Coloring at(long index) const override;

 private:
  int ground_size_;
  int num_colors_;
  std::vector<ElementId> support_;
  long count_;
};

Packing greedy_maximalize(const Instance& inst, const Packing& base);

struct ImprovementSearch {
  std::optional<ImprovementCandidate> candidate;
  AuxMultigraph graph;
  int t = 0;
  long colorings_tried = 0;  // 0 in naive mode
};

// One improvement search on a fixed packing.  `round` seeds the coloring
// family so successive iterations draw fresh colorings.
ImprovementSearch search_improvement(const Instance& inst, const Packing& a, const SearchConfig& cfg,
                                     uint64_t round = 0);

struct IterationRecord {
  int size_before = 0;
  int size_after = 0;
  int improvement_edges = 0;
  ImprovementShape shape = ImprovementShape::TwoCyclesSharedVertex;
  long colorings_tried = 0;
};

struct SearchTrace {
  std::vector<IterationRecord> iterations;
  long total_colorings = 0;
};

// Greedy start, then improve until the configured search finds nothing.
std::pair<Packing, SearchTrace> run_local_search(const Instance& inst, const SearchConfig& cfg);

// Exhaustive (p+1)-for-p swaps for every p < swap_size, iterated to a fixed
// point; swap_size = 1 is plain greedy.  The classical comparison point.
Packing hurkens_schrijver_baseline(const Instance& inst, int swap_size, const Budget& budget = {});

}  // namespace setpack
