#pragma once

#include <functional>
#include <string>

#include "polyspan/famcat.hpp"
#include "polyspan/instances.hpp"
#include "polyspan/poly.hpp"
#include "polyspan/report.hpp"
#include "polyspan/span.hpp"

namespace polyspan {

enum class SourceTag { span, span_iso, poly_c, poly };

std::string tag_name(SourceTag t);

// An oplax functor out of Span, Span_iso, Poly_c or Poly into the family
// categories. Objects go to themselves (X to families over X).
//   phi(g, f)  : L(g o f) => L g . L f
//   lambda(X)  : L(id_X) => Id
template <class One, class Two>
struct OplaxFunctor {
  std::string name;
  SourceTag source = SourceTag::span;
  std::size_t entry_cap = 0;
  std::function<FamFunctor(const One&)> one;
  std::function<FamNatTrans(const Two&)> two;
  std::function<FamNatTrans(const One&, const One&)> phi;
  std::function<FamNatTrans(const FinSet&)> lambda;
};

using SpanFunctor = OplaxFunctor<Span, SpanTwoCell>;  // also Span_iso, with iso cells
using PolyCFunctor = OplaxFunctor<Polynomial, CartTwoCell>;
using PolyFunctor = OplaxFunctor<Polynomial, GeneralTwoCell>;

// Comultiplication/counit presentation of the same data. A span diagonal is
// M with legs s, h, t; Phi at it maps L(s,t) => L(h,t) L(s,h). A polynomial
// diagonal is E -p1-> T -p2-> Y with s: E -> I, h: T -> J, t: Y -> K, and Phi
// maps L(s, p2 p1, t) => L(h, p2, t) L(s, p1, h). Lambda at h: M -> X maps
// L(h, h) (resp. L(h, 1, h)) => Id.
struct SpanDiagonal {
  FinMap s;
  FinMap h;
  FinMap t;
};

struct PolyDiagonal {
  FinMap s;
  FinMap p1;
  FinMap h;
  FinMap p2;
  FinMap t;
};

template <class One, class Two, class Diagonal>
struct ComultCounit {
  std::string name;
  SourceTag source = SourceTag::span;
  std::size_t entry_cap = 0;
  std::function<FamFunctor(const One&)> one;
  std::function<FamNatTrans(const Two&)> two;
  std::function<FamNatTrans(const Diagonal&)> Phi;
  std::function<FamNatTrans(const FinMap&)> Lambda;
};

using SpanComult = ComultCounit<Span, SpanTwoCell, SpanDiagonal>;
using PolyCComult = ComultCounit<Polynomial, CartTwoCell, PolyDiagonal>;

// The local functors of the reconstructions.
FamNatTrans span_local(const Instance& F, const SpanTwoCell& c);
FamNatTrans spaniso_local(const LaxBeckPair& p, const SpanTwoCell& c);
FamNatTrans polyc_local(const LaxBeckTriple& t, const CartTwoCell& c);
FamNatTrans poly_local(const Instance& F, const GeneralTwoCell& c);

// Phi as the unit pasting, Lambda as the counit.
SpanComult span_comult(const Instance& F);
PolyCComult polyc_comult(const LaxBeckTriple& t);

SpanFunctor build_span_oplax(const Instance& F);
SpanFunctor build_spaniso_oplax(const LaxBeckPair& p);
PolyCFunctor build_polyc_oplax(const LaxBeckTriple& t);
PolyFunctor build_poly_oplax(const Instance& F);

// Independent descriptions of the binary constraints: the whiskered
// sigma-delta Beck cell for spans, and the Beck/distributivity/Beck pasting
// for cartesian polynomials.
FamNatTrans span_beck_constraint(const Instance& F, const Span& q, const Span& p);
FamNatTrans polyc_beck_dist_constraint(const LaxBeckTriple& t, const Polynomial& q,
                                       const Polynomial& p);

// Diagonal cells (s, p2 p1, t) => (h, p2, t) o (s, p1, h) and their span
// counterparts; the augmentation (h, h) => (1, 1).
SpanTwoCell span_diagonal_cell(const SpanDiagonal& d);
CartTwoCell poly_diagonal_cell(const PolyDiagonal& d);

SpanComult to_comult(const SpanFunctor& L);
SpanFunctor to_constraints(const SpanComult& C);
PolyCComult to_comult(const PolyCFunctor& L);
PolyCFunctor to_constraints(const PolyCComult& C);

// Law checks, sampled under `cfg` (sizes, sample count, seed, family budget).
Report check_oplax_laws(const SpanFunctor& L, const CheckConfig& cfg);
Report check_oplax_laws(const PolyCFunctor& L, const CheckConfig& cfg);
Report check_oplax_laws(const PolyFunctor& L, const CheckConfig& cfg);

enum class GregariousMode { constraint, adjunction };

Report check_gregarious(const SpanFunctor& L, GregariousMode mode, const CheckConfig& cfg);
Report check_gregarious(const PolyCFunctor& L, GregariousMode mode, const CheckConfig& cfg);
Report check_gregarious(const PolyFunctor& L, GregariousMode mode, const CheckConfig& cfg);

// Invertibility of every sampled binary constraint.
Report check_pseudo(const SpanFunctor& L, const CheckConfig& cfg);
Report check_pseudo(const PolyCFunctor& L, const CheckConfig& cfg);

// Conditions (1)-(4): naturality of Phi, naturality of Lambda, coassociativity,
// counitality.
Report check_comult(const SpanComult& C, const CheckConfig& cfg);
Report check_comult(const PolyCComult& C, const CheckConfig& cfg);

// Both round trips through the other presentation. Span only (not Span_iso,
// whose diagonal cells are not 2-cells there) and Poly_c.
Report check_reduction(const SpanFunctor& L, const CheckConfig& cfg);
Report check_reduction(const PolyCFunctor& L, const CheckConfig& cfg);

// The image of an adjunction f -| u of the source: L f -| L u with
// unit phi_{u,f} L(eta) lambda^-1 and counit lambda L(eps) phi_{f,u}^-1.
Adjunction transport_adjunction(const SpanFunctor& L, const SpanAdjunction& adj);
Adjunction transport_adjunction(const PolyCFunctor& L, const PolyAdjunction& adj);
Adjunction transport_adjunction(const PolyFunctor& L, const PolyAdjunction& adj);

// Generating data read back off a functor: sigma from (1, f), delta from
// (f, 1), compositors from the inverse constraints, adjunctions transported.
Instance extract_sinister(const SpanFunctor& L);
LaxBeckPair extract_pair(const SpanFunctor& K);
LaxBeckTriple extract_triple(const PolyCFunctor& K);

// Icons between functors that agree on objects: components L P => K P.
template <class One, class Two>
struct Icon {
  OplaxFunctor<One, Two> src;
  OplaxFunctor<One, Two> tgt;
  std::function<FamNatTrans(const One&)> component;
};

using SpanIcon = Icon<Span, SpanTwoCell>;
using PolyCIcon = Icon<Polynomial, CartTwoCell>;

// Conj_Y L(-) Conj_X^-1, with seeded per-entry permutations.
SpanFunctor conjugate(const SpanFunctor& L, std::uint64_t seed);
PolyCFunctor conjugate(const PolyCFunctor& L, std::uint64_t seed);
SpanIcon conjugation_icon(const SpanFunctor& L, std::uint64_t seed);
PolyCIcon conjugation_icon(const PolyCFunctor& L, std::uint64_t seed);
SpanIcon identity_icon(const SpanFunctor& L);

// Extends icon components given on the generators (1, t) (and (1, p, 1) for
// polynomials) to every 1-cell. The component at (s, 1) is forced to be the
// mate of the inverse component at (1, s), so a non-invertible generator
// component surfaces as an Error when a component is evaluated.
using GeneratorRule = std::function<FamNatTrans(const FinMap&)>;
SpanIcon icon_extend(const GeneratorRule& at_sigma, const SpanFunctor& L, const SpanFunctor& K);
PolyCIcon icon_extend(const GeneratorRule& at_sigma, const GeneratorRule& at_tensor,
                      const PolyCFunctor& L, const PolyCFunctor& K);

// The inverse of the component at the left adjoint (1, f), as the mate of the
// component at its right adjoint (f, 1).
FamNatTrans icon_mate_inverse(const SpanIcon& a, const FinMap& f);

// Local naturality, compatibility with the binary and nullary constraints.
Report check_icon(const SpanIcon& a, const CheckConfig& cfg);
Report check_icon(const PolyCIcon& a, const CheckConfig& cfg);

// Fault fixtures. `scramble` reverses the elements of every entry of size at
// least two in each component, which breaks naturality and any coherence the
// original satisfied.
FamNatTrans scramble(const FamNatTrans& a);
LaxBeckTriple with_broken_beck(const LaxBeckTriple& t);
SpanFunctor with_broken_phi(const SpanFunctor& L);
PolyCFunctor with_broken_phi(const PolyCFunctor& L);
// Constraints at kernel-pair composites collapsed to non-invertible maps;
// invisible to the constraint-mode check, caught by adjunction transport.
SpanFunctor non_gregarious_toy(const Instance& F);
// A commuting, non-pullback middle square for a would-be cartesian cell.
Square non_pullback_square();

}  // namespace polyspan
