#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "polyspan/famcat.hpp"
#include "polyspan/finset.hpp"
#include "polyspan/report.hpp"

namespace polyspan {

// A pseudofunctor out of finite sets (or their opposite) into the family
// categories, sending X to families over X. Identities go to identity
// functors on the nose, so the nullary constraints are identities.
//   covariant:     comp(g, f) : F g . F f => F(g f)
//   contravariant: comp(g, f) : F f . F g => F(g f)
struct Pseudofunctor {
  std::string name;
  bool contravariant = false;
  std::function<FamFunctor(const FinMap&)> on_map;
  std::function<FamNatTrans(const FinMap&, const FinMap&)> comp;

  FamFunctor operator()(const FinMap& f) const { return on_map(f); }
  FamNatTrans comp_inv(const FinMap& g, const FinMap& f) const { return nat_inverse(comp(g, f)); }
};

Pseudofunctor sigma_pseudofunctor();
Pseudofunctor delta_pseudofunctor();
Pseudofunctor pi_pseudofunctor();
Pseudofunctor exists_pseudofunctor();

// A commuting square
//
//   P --fp--> C
//   |gp       |g
//   A --f-->  B
//
// Beck cells at it go F_x(fp) F_delta(gp) => F_delta(g) F_x(f).
struct Square {
  FinMap f;
  FinMap g;
  FinMap fp;
  FinMap gp;

  bool commutes() const;
  bool is_pullback() const;
};

// Apex and legs from the chosen pullback of f and g.
Square chosen_square(const FinMap& f, const FinMap& g);

json encode(const Square& sq);

using BeckRule = std::function<FamNatTrans(const Square&)>;
using AdjointRule = std::function<Adjunction(const FinMap&)>;

struct LaxBeckPair {
  std::string name;
  Pseudofunctor tensor;
  Pseudofunctor delta;
  BeckRule beck;
  std::size_t entry_cap = 0;  // largest entry size of the target families; 0 if unbounded
};

struct LaxBeckTriple {
  std::string name;
  Pseudofunctor sigma;
  Pseudofunctor delta;
  Pseudofunctor tensor;
  AdjointRule sigma_delta;  // F_sigma f -| F_delta f
  BeckRule beck;
  std::size_t entry_cap = 0;

  LaxBeckPair pair() const;
};

// A sinister pseudofunctor F = sigma together with chosen right adjoints
// (identity-strict). Two-sinister when a second right adjoint pi is chosen.
struct Instance {
  std::string name;
  Pseudofunctor sigma;
  Pseudofunctor delta;
  std::optional<Pseudofunctor> pi;
  AdjointRule sigma_delta;
  AdjointRule delta_pi;
  std::size_t entry_cap = 0;

  bool two_sinister() const { return pi.has_value(); }
};

Instance family_instance();
Instance sub_instance();

enum class Tensor { product, coproduct };
LaxBeckTriple monoidal_triple(Tensor t);

// What a command-line instance name stands for: always a triple; an instance
// whenever there is a sinister functor to start from.
struct Subject {
  std::string name;
  std::optional<Instance> instance;
  LaxBeckTriple triple;
};

// family | sub | monoidal-product | monoidal-coproduct; throws Error otherwise.
Subject subject_by_name(const std::string& name);
std::vector<std::string> subject_names();

// Clamp a family budget to an instance's entry cap.
SampleBudget clamp(const SampleBudget& b, std::size_t entry_cap);

// Sigma-delta Beck cell F_sigma(fp) F_delta(gp) => F_delta(g) F_sigma(f): the
// mate of the sigma compositor square.
FamNatTrans sigma_delta_beck(const Pseudofunctor& sigma, const AdjointRule& adj, const Square& sq);

// Mate of the delta compositor square under delta -| pi:
// F_delta(g) F_pi(f) => F_pi(fp) F_delta(gp). Defined at any commuting square.
FamNatTrans delta_pi_mate(const Instance& F, const Square& sq);

// The triple (sigma, delta, pi) whose Beck cell is the inverse of
// delta_pi_mate. Throws Error when F has no second adjoint.
LaxBeckTriple extract_beck_data(const Instance& F);

// The sinister part of a triple.
Instance sinister_part(const LaxBeckTriple& t);

// The pasting Sigma_r tensor_q Delta_p => tensor_f Sigma_u at a distributivity
// pullback around (f, u).
FamNatTrans distributivity_morphism(const LaxBeckTriple& t, const DistPullbackResult& d);

// Budget and sampling for configuration-level checks.
struct CheckConfig {
  std::size_t max_size = 3;
  std::size_t samples = 30;
  std::uint64_t seed = 1;
  bool exhaustive = false;  // every configuration with sets up to max_size
  SampleBudget families;
};

enum class Condition { sigma_delta, delta_tensor, sigma_tensor, beck_pair_coherence };

std::string condition_name(Condition c);

// Verdicts at single configurations.
Verdict sigma_delta_condition_at(const LaxBeckTriple& t, const Square& sq, const SampleBudget& b);
Verdict delta_tensor_condition_at(const LaxBeckTriple& t, const Square& sq, const SampleBudget& b);
Verdict distributivity_condition_at(const LaxBeckTriple& t, const DistPullbackResult& d,
                                    const SampleBudget& b);
// Invertibility of delta_pi_mate: detects squares that are not pullbacks.
Verdict delta_pi_condition_at(const Instance& F, const Square& sq, const SampleBudget& b);

Report condition_check(const LaxBeckTriple& t, Condition which, const CheckConfig& cfg);
Report condition_check(const Instance& F, Condition which, const CheckConfig& cfg);
// The four coherence conditions on Beck data: horizontal and vertical double
// pullbacks, and the two nullary squares.
Report beck_pair_coherence(const LaxBeckPair& p, const CheckConfig& cfg);
// Invertibility and associativity of the compositors on sampled composable
// triples.
Report pseudofunctor_check(const Pseudofunctor& F, std::size_t entry_cap, const CheckConfig& cfg);
// Triangle identities of the declared adjunctions on sampled maps.
Report adjunction_check(const Instance& F, const CheckConfig& cfg);

// Configuration samplers shared with the suites.
std::vector<Square> sample_pullback_squares(const CheckConfig& cfg);
std::vector<DistPullbackResult> sample_dpbs(const CheckConfig& cfg);

// Subsets as characteristic vectors, the target of the Sub instance.
using Subset = std::vector<bool>;

struct SubPoset {
  FinSet carrier;

  std::vector<Subset> elements() const;
  static bool leq(const Subset& a, const Subset& b);
  static Subset meet(const Subset& a, const Subset& b);
  static Subset join(const Subset& a, const Subset& b);
};

Subset sub_exists(const FinMap& f, const Subset& s);
Subset sub_preimage(const FinMap& f, const Subset& t);
Subset sub_forall(const FinMap& f, const Subset& s);
Family subset_family(const FinSet& x, const Subset& s);
Subset family_subset(const Family& x);

// Exists -| preimage -| forall as Galois connections, and lattice laws, on
// every map between sets of size <= max_size.
Report sub_galois_check(std::size_t max_size);

}  // namespace polyspan
