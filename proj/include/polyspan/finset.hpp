#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace polyspan {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A finite set {0, ..., size-1}. Labels are display names only and take no
// part in equality.
struct FinSet {
  std::size_t size = 0;
  std::vector<std::string> labels;

  FinSet() = default;
  explicit FinSet(std::size_t n) : size(n) {}
  FinSet(std::size_t n, std::vector<std::string> names);

  bool operator==(const FinSet& o) const { return size == o.size; }
};

struct FinMap {
  FinSet dom;
  FinSet cod;
  std::vector<std::size_t> table;

  FinMap() = default;
  FinMap(FinSet d, FinSet c, std::vector<std::size_t> t);

  static FinMap identity(const FinSet& x);
  static FinMap constant(const FinSet& d, const FinSet& c, std::size_t value);
  static FinMap empty(const FinSet& c) { return FinMap(FinSet(0), c, {}); }

  std::size_t operator()(std::size_t x) const { return table[x]; }

  bool is_identity() const;
  bool is_injective() const;
  bool is_surjective() const;
  bool is_bijection() const { return is_injective() && is_surjective(); }
  FinMap inverse() const;

  bool operator==(const FinMap& o) const {
    return dom == o.dom && cod == o.cod && table == o.table;
  }
};

// g after f.
FinMap compose_map(const FinMap& g, const FinMap& f);

struct Fiber {
  FinSet set;
  FinMap inclusion;
};

Fiber fiber(const FinMap& f, std::size_t b);

// Fibers of f listed for every element of the codomain, ascending.
std::vector<std::vector<std::size_t>> fibers(const FinMap& f);

// Chosen pullback of a cospan A --f--> B <--g-- C.
struct PullbackResult {
  FinMap f;
  FinMap g;
  FinSet apex;
  FinMap proj1;  // apex -> A
  FinMap proj2;  // apex -> C
  std::vector<std::pair<std::size_t, std::size_t>> pairs;

  std::optional<std::size_t> index_of(std::size_t a, std::size_t c) const;
  std::size_t at(std::size_t a, std::size_t c) const;

  std::vector<std::pair<std::uint64_t, std::size_t>> keys_;
};

PullbackResult pullback(const FinMap& f, const FinMap& g);

// The unique h with proj1 h = u and proj2 h = v.
FinMap pullback_mediate(const PullbackResult& pb, const FinMap& u, const FinMap& v);

// Does the commuting square
//   P --top--> Q
//   |left      |right
//   A --bottom-> B
// exhibit P as a pullback?
bool is_pullback_square(const FinMap& top, const FinMap& left, const FinMap& right,
                        const FinMap& bottom);

// Distributivity pullback around (f, u) for u: X -> A and f: A -> B.
//
//   T --q--> Y
//   |p       |
//   X        |r
//   |u       |
//   A --f--> B
struct DistPullbackResult {
  FinMap f;
  FinMap u;
  FinSet T;
  FinSet Y;
  FinMap p;
  FinMap q;
  FinMap r;
  PullbackResult tpb;  // T as the chosen pullback of f and r
  // For each y, the chosen X-element over each a in f^-1(r(y)), ascending in a.
  std::vector<std::vector<std::size_t>> sections;

  std::optional<std::size_t> section_index(std::size_t b,
                                           const std::vector<std::size_t>& section) const;

  std::vector<std::pair<std::vector<std::size_t>, std::size_t>> keys_;
};

DistPullbackResult dist_pullback(const FinMap& f, const FinMap& u);

// A pullback around (f, u): T' -p'-> X, T' -q'-> Y', Y' -r'-> B with the
// outer rectangle (u p', q') a pullback of (f, r').
struct PullbackAround {
  FinMap p;
  FinMap q;
  FinMap r;
};

struct DpbMorphism {
  FinMap s;  // T' -> T
  FinMap t;  // Y' -> Y
};

DpbMorphism dpb_factor(const DistPullbackResult& dpb, const PullbackAround& cand);

// Every map dom -> cod, in lexicographic order of tables.
std::vector<FinMap> enumerate_maps(const FinSet& dom, const FinSet& cod);

// Every bijection of a set.
std::vector<FinMap> enumerate_permutations(const FinSet& x);

}  // namespace polyspan
