#include "setpack/instance.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "setpack/bigmath.hpp"
#include "setpack/errors.hpp"
#include "setpack/rng.hpp"

namespace setpack {

bool KSet::contains(ElementId e) const {
  return std::binary_search(elements.begin(), elements.end(), e);
}

bool Packing::contains(SetId id) const {
  return std::binary_search(ids.begin(), ids.end(), id);
}

bool conflicts(const KSet& a, const KSet& b) {
  if (a.id == b.id && a.id >= 0) return true;
  auto i = a.elements.begin();
  auto j = b.elements.begin();
  while (i != a.elements.end() && j != b.elements.end()) {
    if (*i == *j) return true;
    if (*i < *j) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

bool is_packing(const Instance& inst, const std::vector<SetId>& ids) {
  std::set<SetId> seen;
  std::set<ElementId> used;
  for (SetId id : ids) {
    if (id < 0 || id >= inst.num_sets()) return false;
    if (!seen.insert(id).second) return false;
    for (ElementId e : inst.set(id).elements) {
      if (!used.insert(e).second) return false;
    }
  }
  return true;
}

Instance pad_to_k(const std::vector<std::vector<ElementId>>& raw_sets, int k) {
  if (k < 1) throw InvalidInputError("k must be positive");
  std::vector<std::vector<ElementId>> canon;
  canon.reserve(raw_sets.size());
  ElementId max_raw = -1;
  for (size_t i = 0; i < raw_sets.size(); ++i) {
    std::vector<ElementId> s = raw_sets[i];
    if (s.empty()) {
      throw InvalidInputError("raw set " + std::to_string(i) + " is empty");
    }
    if (static_cast<int>(s.size()) > k) {
      throw InvalidInputError("raw set " + std::to_string(i) + " has more than k elements");
    }
    std::sort(s.begin(), s.end());
    if (s.front() < 0) {
      throw InvalidInputError("raw set " + std::to_string(i) + " has a negative element");
    }
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
      throw InvalidInputError("raw set " + std::to_string(i) + " repeats an element");
    }
    max_raw = std::max(max_raw, s.back());
    canon.push_back(std::move(s));
  }
  {
    std::set<std::vector<ElementId>> distinct(canon.begin(), canon.end());
    if (distinct.size() != canon.size()) {
      throw InvalidInputError("raw sets must be pairwise distinct");
    }
  }

  Instance inst;
  inst.k = k;
  ElementId next_pad = max_raw + 1;
  for (size_t i = 0; i < canon.size(); ++i) {
    KSet s;
    s.id = static_cast<SetId>(i);
    s.elements = canon[i];
    while (static_cast<int>(s.elements.size()) < k) {
      s.elements.push_back(next_pad++);  // above every raw id, keeps order
    }
    inst.sets.push_back(std::move(s));
  }
  inst.ground_size = next_pad;
  if (inst.ground_size == 0) inst.ground_size = 1;
  return inst;
}

namespace {

// Splits off trailing comments and reports whether anything is left.
bool content_of(const std::string& line, std::string* out) {
  std::string body = line.substr(0, line.find('#'));
  size_t a = body.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return false;
  size_t b = body.find_last_not_of(" \t\r\n");
  *out = body.substr(a, b - a + 1);
  return true;
}

}  // namespace

Instance read_instance(std::istream& in) {
  Instance inst;
  bool have_header = false;
  int declared_sets = 0;
  int line_no = 0;
  std::set<std::vector<ElementId>> seen_sets;
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line;
    if (!content_of(raw, &line)) continue;
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    if (!have_header) {
      if (tag != "p") throw ParseError("expected 'p setpack ...' header", line_no);
      std::string kind;
      long k = 0, m = 0, g = 0;
      if (!(ss >> kind >> k >> m >> g) || kind != "setpack") {
        throw ParseError("malformed header, want 'p setpack <k> <num_sets> <ground_size>'", line_no);
      }
      std::string extra;
      if (ss >> extra) throw ParseError("trailing tokens after header", line_no);
      if (k < 1) throw ParseError("k must be positive", line_no);
      if (m < 0) throw ParseError("set count must be non-negative", line_no);
      if (g < 1) throw ParseError("ground size must be positive", line_no);
      inst.k = static_cast<int>(k);
      inst.ground_size = static_cast<int>(g);
      declared_sets = static_cast<int>(m);
      have_header = true;
      continue;
    }
    if (tag != "s") throw ParseError("unknown directive '" + tag + "'", line_no);
    if (inst.num_sets() == declared_sets) {
      throw ParseError("more sets than the header declared", line_no);
    }
    KSet s;
    s.id = inst.num_sets();
    long e;
    while (ss >> e) {
      if (e < 0 || e >= inst.ground_size) {
        throw ParseError("element " + std::to_string(e) + " outside [0, ground_size)", line_no);
      }
      if (!s.elements.empty() && e <= s.elements.back()) {
        throw ParseError("set elements must be strictly increasing", line_no);
      }
      s.elements.push_back(static_cast<ElementId>(e));
    }
    if (!ss.eof()) throw ParseError("set line has a non-integer token", line_no);
    if (static_cast<int>(s.elements.size()) != inst.k) {
      throw ParseError("set has " + std::to_string(s.elements.size()) + " elements, want exactly " +
                           std::to_string(inst.k),
                       line_no);
    }
    if (!seen_sets.insert(s.elements).second) {
      throw ParseError("duplicate set", line_no);
    }
    inst.sets.push_back(std::move(s));
  }
  if (!have_header) throw ParseError("missing 'p setpack' header", line_no == 0 ? 1 : line_no);
  if (inst.num_sets() != declared_sets) {
    throw ParseError("header declared " + std::to_string(declared_sets) + " sets, found " +
                         std::to_string(inst.num_sets()),
                     line_no + 1);
  }
  return inst;
}

Instance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot open instance file: " + path);
  return read_instance(in);
}

void write_instance(const Instance& inst, std::ostream& out) {
  out << "p setpack " << inst.k << ' ' << inst.num_sets() << ' ' << inst.ground_size << '\n';
  for (const KSet& s : inst.sets) {
    out << 's';
    for (ElementId e : s.elements) out << ' ' << e;
    out << '\n';
  }
}

void write_instance_file(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInputError("cannot open output file: " + path);
  write_instance(inst, out);
}

std::string instance_digest(const Instance& inst) {
  std::ostringstream ss;
  write_instance(inst, ss);
  const std::string bytes = ss.str();
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

Instance random_instance(int k, int num_sets, int ground_size, uint64_t seed) {
  if (k < 1 || ground_size < k || num_sets < 0) {
    throw InvalidInputError("random_instance: need k >= 1, ground_size >= k, num_sets >= 0");
  }
  if (BigInt(num_sets) > binomial(ground_size, k)) {
    throw InvalidInputError("random_instance: fewer than num_sets distinct k-subsets exist");
  }
  Rng rng(seed);
  std::set<std::vector<ElementId>> chosen;
  while (static_cast<int>(chosen.size()) < num_sets) {
    std::vector<ElementId> s;
    while (static_cast<int>(s.size()) < k) {
      ElementId e = static_cast<ElementId>(rng.below(ground_size));
      if (std::find(s.begin(), s.end(), e) == s.end()) s.push_back(e);
    }
    std::sort(s.begin(), s.end());
    chosen.insert(std::move(s));
  }
  Instance inst;
  inst.k = k;
  inst.ground_size = ground_size;
  for (const auto& s : chosen) {
    KSet ks;
    ks.id = inst.num_sets();
    ks.elements = s;
    inst.sets.push_back(std::move(ks));
  }
  return inst;
}

}  // namespace setpack
