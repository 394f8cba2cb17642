#pragma once

#include <vector>

#include "polyspan/finset.hpp"
#include "polyspan/span.hpp"

namespace polyspan {

// I <-s- E -p-> B -t-> J
struct Polynomial {
  FinMap s;
  FinMap p;
  FinMap t;

  Polynomial() = default;
  Polynomial(FinMap s_, FinMap p_, FinMap t_);

  const FinSet& positions() const { return s.dom; }  // E
  const FinSet& shapes() const { return t.dom; }     // B
  const FinSet& source() const { return s.cod; }     // I
  const FinSet& target() const { return t.cod; }     // J

  static Polynomial identity(const FinSet& x);

  bool operator==(const Polynomial& o) const { return s == o.s && p == o.p && t == o.t; }
};

// sigma: E -> M, nu: B -> N with the middle square a pullback.
struct CartTwoCell {
  Polynomial src;
  Polynomial tgt;
  FinMap sigma;
  FinMap nu;

  CartTwoCell() = default;
  CartTwoCell(Polynomial a, Polynomial b, FinMap sigma_, FinMap nu_);

  bool operator==(const CartTwoCell& o) const {
    return src == o.src && tgt == o.tgt && sigma == o.sigma && nu == o.nu;
  }
};

// A representative E <-e- S -f-> M over g: B -> N, where S with (p e, f) is a
// pullback of g against q. Normal form: S is the chosen pullback of g and q.
struct GeneralTwoCell {
  Polynomial src;
  Polynomial tgt;
  FinMap e;
  FinMap f;
  FinMap g;
  bool canonical = false;

  GeneralTwoCell() = default;
  GeneralTwoCell(Polynomial a, Polynomial b, FinMap e_, FinMap f_, FinMap g_);

  const FinSet& apex() const { return e.dom; }

  // Compares normal forms.
  bool operator==(const GeneralTwoCell& o) const;
};

struct PolyComposite {
  Polynomial poly;
  PullbackResult D;          // first.t against second.s; d1 = proj1, d2 = proj2
  DistPullbackResult dpb;    // second.p around d2
  PullbackResult H;          // first.p against d1 dpb.p
  FinMap d1p;                // d1 after dpb.p, T -> B
};

PolyComposite compose_poly_witness(const Polynomial& second, const Polynomial& first);
Polynomial compose_poly(const Polynomial& second, const Polynomial& first);

// Shapes of a composite decoded into the shapes of its factors: a shape of the
// second polynomial together with, for each of its positions (ascending), a
// shape of the first polynomial.
struct CompositeShape {
  std::size_t outer;
  std::vector<std::size_t> positions;  // second-polynomial positions over outer
  std::vector<std::size_t> inner;      // first-polynomial shape at each position
};

struct CompositePosition {
  std::size_t shape;   // composite shape
  std::size_t outer;   // position of the second polynomial
  std::size_t inner;   // position of the first polynomial
};

CompositeShape decode_shape(const PolyComposite& c, std::size_t y);
CompositePosition decode_position(const PolyComposite& c, std::size_t h);
std::size_t encode_shape(const PolyComposite& c, std::size_t outer, const std::vector<std::size_t>& inner);
std::size_t encode_position(const PolyComposite& c, std::size_t shape, std::size_t outer,
                            std::size_t inner);

CartTwoCell cart2_identity(const Polynomial& p);
CartTwoCell cart2_compose(Composition mode, const CartTwoCell& beta, const CartTwoCell& alpha);

GeneralTwoCell gen2_identity(const Polynomial& p);
GeneralTwoCell gen2_from_cart(const CartTwoCell& c);
// Triangle cell P => Q over the same shapes, e: M -> E.
GeneralTwoCell gen2_triangle(const Polynomial& src, const Polynomial& tgt, const FinMap& e);
GeneralTwoCell gen2_normalize(const GeneralTwoCell& a);

struct GeneralFactorization {
  Polynomial middle;  // (u f, p_S, t) on the chosen pullback S
  FinMap e;           // triangle part, S -> E
  CartTwoCell cart;   // middle => tgt
};

GeneralFactorization gen2_factor(const GeneralTwoCell& a);

// True when the cell is (the normal form of) a cartesian cell.
bool gen2_is_cartesian(const GeneralTwoCell& a);
CartTwoCell gen2_to_cart(const GeneralTwoCell& a);

GeneralTwoCell gen2_compose(Composition mode, const GeneralTwoCell& beta,
                            const GeneralTwoCell& alpha);

// (r q) p => r (q p); unitors are identities by the chosen normalization.
CartTwoCell poly_associator(const Polynomial& r, const Polynomial& q, const Polynomial& p);
CartTwoCell poly_associator_inverse(const Polynomial& r, const Polynomial& q, const Polynomial& p);
CartTwoCell poly_coherence(Coherence kind, const std::vector<Polynomial>& polys);

enum class ArrowPoly { sigma, delta, pi };

// sigma: (1,1,f); delta: (f,1,1); pi: (1,f,1).
Polynomial embed_arrow_poly(ArrowPoly mode, const FinMap& f);

enum class SpanPoly { sigma_delta, delta_tensor, delta_pi };

// sigma_delta: (s,t) -> (s,1,t). delta_tensor and delta_pi: (s,t) -> (s,t,1).
Polynomial embed_span_poly(SpanPoly mode, const Span& s);
CartTwoCell embed_span_2cell_sigma_delta(const SpanTwoCell& c);
// Requires an invertible span 2-cell.
CartTwoCell embed_span_2cell_delta_tensor(const SpanTwoCell& c);
// Contravariant on 2-cells: (s,t) => (s',t') gives (s',t',1) => (s,t,1).
GeneralTwoCell embed_span_2cell_delta_pi(const SpanTwoCell& c);

enum class PolyAdjMode { sigma_delta, delta_pi };

struct PolyAdjunction {
  Polynomial left;
  Polynomial right;
  GeneralTwoCell unit;    // id => right o left
  GeneralTwoCell counit;  // left o right => id
};

// sigma_delta: (1,1,f) -| (f,1,1). delta_pi: (f,1,1) -| (1,f,1).
PolyAdjunction poly_adjunction(PolyAdjMode mode, const FinMap& f);
bool poly_triangle_left(const PolyAdjunction& adj);
bool poly_triangle_right(const PolyAdjunction& adj);

}  // namespace polyspan
