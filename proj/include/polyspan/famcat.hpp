#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "polyspan/finset.hpp"
#include "polyspan/poly.hpp"
#include "polyspan/sample.hpp"
#include "polyspan/span.hpp"

namespace polyspan {

// A finite family of finite sets indexed by `index`; an object of the slice
// over the index set.
struct Family {
  FinSet index;
  std::vector<FinSet> entries;

  Family() = default;
  Family(FinSet idx, std::vector<FinSet> e);
  static Family of_sizes(const FinSet& idx, const std::vector<std::size_t>& sizes);

  std::size_t size(std::size_t i) const { return entries[i].size; }
  std::vector<std::size_t> sizes() const;

  bool operator==(const Family& o) const;
};

struct FamilyMap {
  Family src;
  Family tgt;
  std::vector<FinMap> components;

  FamilyMap() = default;
  FamilyMap(Family s, Family t, std::vector<FinMap> c);

  static FamilyMap identity(const Family& x);
  bool is_iso() const;
  FamilyMap inverse() const;

  bool operator==(const FamilyMap& o) const {
    return src == o.src && tgt == o.tgt && components == o.components;
  }
};

FamilyMap compose_family_map(const FamilyMap& g, const FamilyMap& f);

// Primitive functors between family categories. Conj and ConjInv are the
// identity on objects and conjugate maps by seeded per-entry permutations;
// they are isomorphic to the identity and exist to build nontrivial icons.
enum class AtomKind { delta, sigma, pi, exists, conj, conj_inv };

struct Atom {
  AtomKind kind;
  FinMap f;                 // unused for conj atoms
  FinSet index;             // conj atoms only
  std::uint64_t seed = 0;   // conj atoms only

  const FinSet& src_index() const;
  const FinSet& tgt_index() const;
  bool is_identity() const;

  bool operator==(const Atom& o) const;
};

// atoms[0] is applied last.
struct FamFunctor {
  FinSet src_index;
  FinSet tgt_index;
  std::vector<Atom> atoms;

  static FamFunctor identity(const FinSet& x);
  static FamFunctor delta(const FinMap& f);
  static FamFunctor sigma(const FinMap& f);
  static FamFunctor pi(const FinMap& f);
  static FamFunctor exists(const FinMap& f);
  static FamFunctor conj(const FinSet& x, std::uint64_t seed);
  static FamFunctor conj_inv(const FinSet& x, std::uint64_t seed);

  bool is_identity() const { return atoms.empty(); }

  Family eval(const Family& x) const;
  FamilyMap eval(const FamilyMap& m) const;

  std::string describe() const;

  bool operator==(const FamFunctor& o) const {
    return src_index == o.src_index && tgt_index == o.tgt_index && atoms == o.atoms;
  }
};

// F after G.
FamFunctor compose(const FamFunctor& f, const FamFunctor& g);
FamFunctor compose(std::initializer_list<FamFunctor> chain);

// Element layouts of the primitive functors.
struct SigmaLayout {
  SigmaLayout(const FinMap& f, const Family& x);
  std::size_t encode(std::size_t a, std::size_t elem) const;          // into entry f(a)
  std::pair<std::size_t, std::size_t> decode(std::size_t b, std::size_t idx) const;
  std::vector<std::size_t> offset;  // per a
  std::vector<std::size_t> total;   // per b
  std::vector<std::vector<std::size_t>> fib;
};

// Sections over f^-1(b) in mixed radix, first element of the fiber most
// significant (same order as dist_pullback).
struct PiLayout {
  PiLayout(const FinMap& f, const Family& x);
  std::size_t encode(std::size_t b, const std::vector<std::size_t>& section) const;
  std::vector<std::size_t> decode(std::size_t b, std::size_t idx) const;
  std::vector<std::size_t> total;
  std::vector<std::vector<std::size_t>> fib;
  std::vector<std::size_t> sizes;
};

// Seeded permutation of an entry used by conj atoms.
FinMap conj_permutation(std::uint64_t seed, std::size_t entry, std::size_t size);

struct FamNatTrans {
  FamFunctor src;
  FamFunctor tgt;
  std::function<FamilyMap(const Family&)> rule;
  std::string name;

  // Validated component at x.
  FamilyMap at(const Family& x) const;
};

FamNatTrans nat_identity(const FamFunctor& f);
// A transformation between two chains that agree extensionally; components
// are identities and boundaries are checked at evaluation.
FamNatTrans nat_cast(const FamFunctor& from, const FamFunctor& to);
FamNatTrans nat_vcomp(const FamNatTrans& beta, const FamNatTrans& alpha);
FamNatTrans nat_vcomp(std::initializer_list<FamNatTrans> chain);  // leftmost applied last
FamNatTrans whisker_left(const FamFunctor& h, const FamNatTrans& alpha);   // H alpha
FamNatTrans whisker_right(const FamNatTrans& alpha, const FamFunctor& k);  // alpha K
FamNatTrans whisker(const FamFunctor& h, const FamNatTrans& alpha, const FamFunctor& k);
FamNatTrans nat_hcomp(const FamNatTrans& beta, const FamNatTrans& alpha);
FamNatTrans nat_inverse(const FamNatTrans& alpha);

struct Adjunction {
  FamFunctor left;
  FamFunctor right;
  FamNatTrans unit;    // id => right left
  FamNatTrans counit;  // left right => id
};

enum class AdjMode { sigma_delta, delta_pi, exists_delta };

Adjunction family_adjunction(AdjMode mode, const FinMap& f);
Adjunction adjunction_identity(const FinSet& x);
// (f2 -| u2) after (f1 -| u1): f2 f1 -| u1 u2.
Adjunction adjunction_compose(const Adjunction& second, const Adjunction& first);

// alpha: f2 G => H f1, adj1: f1 -| u1, adj2: f2 -| u2. Result: G u1 => u2 H.
FamNatTrans mate(const FamNatTrans& alpha, const FamFunctor& g, const FamFunctor& h,
                 const Adjunction& adj1, const Adjunction& adj2);
// beta: G u1 => u2 H. Result: f2 G => H f1.
FamNatTrans mate_inverse(const FamNatTrans& beta, const FamFunctor& g, const FamFunctor& h,
                         const Adjunction& adj1, const Adjunction& adj2);

// Compositors of the primitive functors; invertible.
FamNatTrans sigma_compositor(const FinMap& g, const FinMap& f);   // sigma_g sigma_f => sigma_gf
FamNatTrans pi_compositor(const FinMap& g, const FinMap& f);      // pi_g pi_f => pi_gf
FamNatTrans exists_compositor(const FinMap& g, const FinMap& f);  // on subsingleton families
FamNatTrans delta_compositor(const FinMap& g, const FinMap& f);   // delta_f delta_g => delta_gf
// Id => Conj with the seeded permutations as components.
FamNatTrans conj_iso(const FinSet& x, std::uint64_t seed);

// Sampling configuration for bounded extensional checks.
struct SampleBudget {
  std::size_t max_entry = 2;
  std::size_t samples = 20;
  std::uint64_t seed = 1;
};

struct Witness {
  Family family;
  std::size_t entry = 0;
  std::size_t element = 0;
  std::string detail;
};

// Families whose evaluation would materialize an entry above this size are
// skipped by the checkers below and counted in Verdict::skipped.
inline constexpr std::size_t kMaxEntrySize = std::size_t{1} << 22;

struct SizeLimit : Error {
  using Error::Error;
};

// A verdict with checked == 0 because every sample was skipped is a failure.
struct Verdict {
  bool ok = true;
  std::optional<Witness> witness;
  std::size_t checked = 0;
  std::size_t skipped = 0;
  bool exhaustive = false;
};

// Families over `index` with entries <= max_entry: all of them when there are
// at most budget.samples, otherwise a deterministic sample.
std::vector<Family> sample_families(const FinSet& index, const SampleBudget& budget);
Family random_family(Rng& rng, const FinSet& index, std::size_t max_entry);
// A random map out of x into a family with entries <= max_entry (entries
// that must receive elements get at least one).
FamilyMap random_family_map(Rng& rng, const Family& x, std::size_t max_entry);

Verdict nat_equal(const FamNatTrans& a, const FamNatTrans& b, const SampleBudget& budget);
Verdict nat_is_iso(const FamNatTrans& a, const SampleBudget& budget);
Verdict nat_is_natural(const FamNatTrans& a, const SampleBudget& budget);
Verdict functor_laws(const FamFunctor& f, const SampleBudget& budget);
Verdict triangle_identities(const Adjunction& adj, const SampleBudget& budget);

// Semantics of spans and polynomials.
FamFunctor eval_span_as_functor(const Span& s);
FamFunctor eval_poly_as_functor(const Polynomial& p);
FamNatTrans eval_span_two_cell(const SpanTwoCell& c);
FamNatTrans eval_two_cell(const CartTwoCell& c);
FamNatTrans eval_two_cell(const GeneralTwoCell& c);

// Eval(Q o P) => Eval(Q) Eval(P) read off the composition witness.
FamNatTrans poly_comparison(const Polynomial& second, const Polynomial& first);

}  // namespace polyspan
