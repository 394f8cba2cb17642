#include "polyspan/reconstruct.hpp"

#include <algorithm>

#include "polyspan/sample.hpp"

namespace polyspan {

std::string tag_name(SourceTag t) {
  switch (t) {
    case SourceTag::span:
      return "span";
    case SourceTag::span_iso:
      return "span_iso";
    case SourceTag::poly_c:
      return "poly_c";
    case SourceTag::poly:
      return "poly";
  }
  return "?";
}

namespace {

// Delta_(u m) => Delta_m Delta_u, the mate of the sigma compositor.
FamNatTrans delta_split(const Pseudofunctor& sigma, const AdjointRule& sd, const FinMap& u,
                        const FinMap& m) {
  auto out = mate(sigma.comp(u, m), FamFunctor::identity(m.dom), FamFunctor::identity(u.cod),
                  sd(compose_map(u, m)), adjunction_compose(sd(u), sd(m)));
  out.name = "alpha";
  return out;
}

// Sigma_(v m) Delta_m => Sigma_v, the mate of the inverse sigma compositor.
FamNatTrans sigma_absorb(const Pseudofunctor& sigma, const AdjointRule& sd, const FinMap& v,
                         const FinMap& m) {
  auto out = mate(sigma.comp_inv(v, m), sigma(compose_map(v, m)), sigma(v), sd(m),
                  adjunction_identity(v.cod));
  out.name = "gamma";
  return out;
}

Span sigma_span(const FinMap& f) { return embed_arrow_span(ArrowEmbedding::sigma, f); }
Span delta_span(const FinMap& f) { return embed_arrow_span(ArrowEmbedding::delta, f); }

}  // namespace

// Local functors --------------------------------------------------------------

FamNatTrans span_local(const Instance& F, const SpanTwoCell& c) {
  const auto& m = c.apex_map;
  auto alpha = delta_split(F.sigma, F.sigma_delta, c.tgt.left, m);
  auto gamma = sigma_absorb(F.sigma, F.sigma_delta, c.tgt.right, m);
  auto out = nat_vcomp(whisker_right(gamma, F.delta(c.tgt.left)),
                       whisker_left(F.sigma(c.src.right), alpha));
  out.name = "L(span2)";
  return out;
}

FamNatTrans spaniso_local(const LaxBeckPair& p, const SpanTwoCell& c) {
  const auto& m = c.apex_map;
  if (!m.is_bijection()) throw Error("spaniso_local: 2-cell is not invertible");
  const auto& u = c.tgt.left;
  const auto& v = c.tgt.right;
  auto idn = FinMap::identity(m.cod);
  auto beck = p.beck(Square{idn, idn, m, m});  // tensor_m Delta_m => Id
  auto out = nat_vcomp({whisker(p.tensor(v), beck, p.delta(u)),
                        whisker_right(p.tensor.comp_inv(v, m), compose(p.delta(m), p.delta(u))),
                        whisker_left(p.tensor(c.src.right), p.delta.comp_inv(u, m))});
  out.name = "L(iso2)";
  return out;
}

FamNatTrans polyc_local(const LaxBeckTriple& t, const CartTwoCell& c) {
  const auto& P = c.src;
  const auto& Q = c.tgt;
  auto alpha = delta_split(t.sigma, t.sigma_delta, Q.s, c.sigma);
  auto beck = t.beck(Square{Q.p, c.nu, P.p, c.sigma});
  auto gamma = sigma_absorb(t.sigma, t.sigma_delta, Q.t, c.nu);
  auto out = nat_vcomp({whisker_right(gamma, compose(t.tensor(Q.p), t.delta(Q.s))),
                        whisker(t.sigma(P.t), beck, t.delta(Q.s)),
                        whisker_left(compose(t.sigma(P.t), t.tensor(P.p)), alpha)});
  out.name = "L(cart2)";
  return out;
}

FamNatTrans poly_local(const Instance& F, const GeneralTwoCell& c) {
  if (!F.pi || !F.delta_pi) throw Error("poly_local: " + F.name + " has no second right adjoint");
  const auto& P = c.src;
  const auto& Q = c.tgt;
  const auto& Pi = *F.pi;
  auto pe = compose_map(P.p, c.e);
  auto St = F.sigma(P.t);
  auto Spe = compose(St, Pi(pe));
  // The triangle part: mate of the pi compositor along e.
  auto m1 = whisker(compose(St, Pi(P.p)), F.delta_pi(c.e).unit, F.delta(P.s));
  auto m2 = whisker(St, Pi.comp(P.p, c.e), compose(F.delta(c.e), F.delta(P.s)));
  auto a1 = whisker_left(Spe, F.delta.comp(P.s, c.e));
  auto a2 = whisker_left(Spe, F.delta.comp_inv(Q.s, c.f));
  auto beck = nat_inverse(delta_pi_mate(F, Square{Q.p, c.g, pe, c.f}));
  auto b = whisker(St, beck, F.delta(Q.s));
  auto gamma = sigma_absorb(F.sigma, F.sigma_delta, Q.t, c.g);
  auto g = whisker_right(gamma, compose(Pi(Q.p), F.delta(Q.s)));
  auto out = nat_vcomp({g, b, a2, a1, m2, m1});
  out.name = "L(gen2)";
  return out;
}

// Comultiplications -------------------------------------------------------------

SpanComult span_comult(const Instance& F) {
  SpanComult C;
  C.name = F.name;
  C.source = SourceTag::span;
  C.entry_cap = F.entry_cap;
  C.one = [F](const Span& s) { return compose(F.sigma(s.right), F.delta(s.left)); };
  C.two = [F](const SpanTwoCell& c) { return span_local(F, c); };
  C.Phi = [F](const SpanDiagonal& d) {
    auto out = whisker(F.sigma(d.t), F.sigma_delta(d.h).unit, F.delta(d.s));
    out.name = "Phi";
    return out;
  };
  C.Lambda = [F](const FinMap& h) {
    auto out = F.sigma_delta(h).counit;
    out.name = "Lambda";
    return out;
  };
  return C;
}

PolyCComult polyc_comult(const LaxBeckTriple& t) {
  PolyCComult C;
  C.name = t.name;
  C.source = SourceTag::poly_c;
  C.entry_cap = t.entry_cap;
  C.one = [t](const Polynomial& P) {
    return compose({t.sigma(P.t), t.tensor(P.p), t.delta(P.s)});
  };
  C.two = [t](const CartTwoCell& c) { return polyc_local(t, c); };
  C.Phi = [t](const PolyDiagonal& d) {
    auto split = whisker(t.sigma(d.t), t.tensor.comp_inv(d.p2, d.p1), t.delta(d.s));
    auto unit = whisker(compose(t.sigma(d.t), t.tensor(d.p2)), t.sigma_delta(d.h).unit,
                        compose(t.tensor(d.p1), t.delta(d.s)));
    auto out = nat_vcomp(unit, split);
    out.name = "Phi";
    return out;
  };
  C.Lambda = [t](const FinMap& h) {
    auto out = t.sigma_delta(h).counit;
    out.name = "Lambda";
    return out;
  };
  return C;
}

// Diagonals ---------------------------------------------------------------------

SpanTwoCell span_diagonal_cell(const SpanDiagonal& d) {
  auto w = compose_span_witness(Span(d.h, d.t), Span(d.s, d.h));
  std::vector<std::size_t> t(d.s.dom.size);
  for (std::size_t m = 0; m < t.size(); ++m) t[m] = w.pb.at(m, m);
  return SpanTwoCell(Span(d.s, d.t), w.span, FinMap(d.s.dom, w.pb.apex, std::move(t)));
}

CartTwoCell poly_diagonal_cell(const PolyDiagonal& d) {
  Polynomial first(d.s, d.p1, d.h);
  Polynomial second(d.h, d.p2, d.t);
  auto w = compose_poly_witness(second, first);
  auto over = fibers(d.p2);
  std::vector<std::size_t> nu(d.p2.cod.size);
  for (std::size_t y = 0; y < nu.size(); ++y) nu[y] = encode_shape(w, y, over[y]);
  std::vector<std::size_t> sigma(d.p1.dom.size);
  for (std::size_t e = 0; e < sigma.size(); ++e) {
    std::size_t tau = d.p1(e);
    sigma[e] = encode_position(w, nu[d.p2(tau)], tau, e);
  }
  Polynomial src(d.s, compose_map(d.p2, d.p1), d.t);
  return CartTwoCell(src, w.poly, FinMap(d.p1.dom, w.poly.positions(), std::move(sigma)),
                     FinMap(d.p2.cod, w.poly.shapes(), std::move(nu)));
}

namespace {

// Constraints from comultiplications, for either cell flavour on polynomials.
template <class Two, class Lift>
std::function<FamNatTrans(const Polynomial&, const Polynomial&)> poly_phi_from(
    const PolyCComult& C, std::function<FamNatTrans(const Two&)> two, Lift lift) {
  return [C, two, lift](const Polynomial& Q, const Polynomial& P) {
    auto w = compose_poly_witness(Q, P);
    const auto& h1 = w.H.proj1;
    const auto& h2 = w.H.proj2;
    PolyDiagonal d{compose_map(P.s, h1), h2, compose_map(P.t, w.d1p), w.dpb.q,
                   compose_map(Q.t, w.dpb.r)};
    Polynomial P1(d.s, d.p1, d.h);
    Polynomial Q1(d.h, d.p2, d.t);
    CartTwoCell cP(P1, P, h1, w.d1p);
    CartTwoCell cQ(Q1, Q, compose_map(w.D.proj2, w.dpb.p), w.dpb.r);
    auto out = nat_vcomp(nat_hcomp(two(lift(cQ)), two(lift(cP))), C.Phi(d));
    out.name = "phi";
    return out;
  };
}

}  // namespace

SpanFunctor to_constraints(const SpanComult& C) {
  SpanFunctor L;
  L.name = C.name;
  L.source = C.source;
  L.entry_cap = C.entry_cap;
  L.one = C.one;
  L.two = C.two;
  L.phi = [C](const Span& q, const Span& p) {
    auto w = compose_span_witness(q, p);
    const auto& c1 = w.pb.proj1;  // to the apex of p
    const auto& b1 = w.pb.proj2;  // to the apex of q
    SpanDiagonal d{compose_map(p.left, c1), compose_map(p.right, c1), compose_map(q.right, b1)};
    SpanTwoCell cP(Span(d.s, d.h), p, c1);
    SpanTwoCell cQ(Span(d.h, d.t), q, b1);
    auto out = nat_vcomp(nat_hcomp(C.two(cQ), C.two(cP)), C.Phi(d));
    out.name = "phi";
    return out;
  };
  L.lambda = [C](const FinSet& x) {
    auto out = C.Lambda(FinMap::identity(x));
    out.name = "lambda";
    return out;
  };
  return L;
}

SpanComult to_comult(const SpanFunctor& L) {
  SpanComult C;
  C.name = L.name;
  C.source = L.source;
  C.entry_cap = L.entry_cap;
  C.one = L.one;
  C.two = L.two;
  C.Phi = [L](const SpanDiagonal& d) {
    auto out = nat_vcomp(L.phi(Span(d.h, d.t), Span(d.s, d.h)), L.two(span_diagonal_cell(d)));
    out.name = "Phi";
    return out;
  };
  C.Lambda = [L](const FinMap& h) {
    auto aug = SpanTwoCell(Span(h, h), Span::identity(h.cod), h);
    auto out = nat_vcomp(L.lambda(h.cod), L.two(aug));
    out.name = "Lambda";
    return out;
  };
  return C;
}

PolyCFunctor to_constraints(const PolyCComult& C) {
  PolyCFunctor L;
  L.name = C.name;
  L.source = C.source;
  L.entry_cap = C.entry_cap;
  L.one = C.one;
  L.two = C.two;
  L.phi = poly_phi_from<CartTwoCell>(C, C.two, [](const CartTwoCell& c) { return c; });
  L.lambda = [C](const FinSet& x) {
    auto out = C.Lambda(FinMap::identity(x));
    out.name = "lambda";
    return out;
  };
  return L;
}

PolyCComult to_comult(const PolyCFunctor& L) {
  PolyCComult C;
  C.name = L.name;
  C.source = L.source;
  C.entry_cap = L.entry_cap;
  C.one = L.one;
  C.two = L.two;
  C.Phi = [L](const PolyDiagonal& d) {
    Polynomial first(d.s, d.p1, d.h);
    Polynomial second(d.h, d.p2, d.t);
    auto out = nat_vcomp(L.phi(second, first), L.two(poly_diagonal_cell(d)));
    out.name = "Phi";
    return out;
  };
  C.Lambda = [L](const FinMap& h) {
    Polynomial aug(h, FinMap::identity(h.dom), h);
    auto out = nat_vcomp(L.lambda(h.cod),
                         L.two(CartTwoCell(aug, Polynomial::identity(h.cod), h, h)));
    out.name = "Lambda";
    return out;
  };
  return C;
}

// Builders ----------------------------------------------------------------------

SpanFunctor build_span_oplax(const Instance& F) {
  if (!F.sigma_delta) throw Error("build_span_oplax: " + F.name + " has no right adjoints");
  auto L = to_constraints(span_comult(F));
  L.name = "span:" + F.name;
  return L;
}

SpanFunctor build_spaniso_oplax(const LaxBeckPair& p) {
  SpanFunctor L;
  L.name = "span_iso:" + p.name;
  L.source = SourceTag::span_iso;
  L.entry_cap = p.entry_cap;
  L.one = [p](const Span& s) { return compose(p.tensor(s.right), p.delta(s.left)); };
  L.two = [p](const SpanTwoCell& c) { return spaniso_local(p, c); };
  L.phi = [p](const Span& q, const Span& s) {
    auto w = compose_span_witness(q, s);
    const auto& c1 = w.pb.proj1;
    const auto& b1 = w.pb.proj2;
    auto beck = p.beck(Square{s.right, q.left, b1, c1});
    auto out = nat_vcomp({whisker(p.tensor(q.right), beck, p.delta(s.left)),
                          whisker_right(p.tensor.comp_inv(q.right, b1),
                                        compose(p.delta(c1), p.delta(s.left))),
                          whisker_left(p.tensor(w.span.right), p.delta.comp_inv(s.left, c1))});
    out.name = "phi";
    return out;
  };
  L.lambda = [](const FinSet& x) { return nat_identity(FamFunctor::identity(x)); };
  return L;
}

PolyCFunctor build_polyc_oplax(const LaxBeckTriple& t) {
  if (!t.sigma_delta || !t.beck) throw Error("build_polyc_oplax: incomplete triple " + t.name);
  auto L = to_constraints(polyc_comult(t));
  L.name = "poly_c:" + t.name;
  return L;
}

PolyFunctor build_poly_oplax(const Instance& F) {
  if (!F.pi || !F.delta_pi) throw Error("build_poly_oplax: " + F.name + " has no second right adjoint");
  auto C = polyc_comult(extract_beck_data(F));
  PolyFunctor L;
  L.name = "poly:" + F.name;
  L.source = SourceTag::poly;
  L.entry_cap = F.entry_cap;
  L.one = C.one;
  L.two = [F](const GeneralTwoCell& c) { return poly_local(F, c); };
  L.phi = poly_phi_from<GeneralTwoCell>(C, L.two, [](const CartTwoCell& c) { return gen2_from_cart(c); });
  L.lambda = [](const FinSet& x) { return nat_identity(FamFunctor::identity(x)); };
  return L;
}

FamNatTrans span_beck_constraint(const Instance& F, const Span& q, const Span& p) {
  auto w = compose_span_witness(q, p);
  const auto& c1 = w.pb.proj1;
  const auto& b1 = w.pb.proj2;
  auto kappa = sigma_delta_beck(F.sigma, F.sigma_delta, Square{p.right, q.left, b1, c1});
  auto out = nat_vcomp({whisker(F.sigma(q.right), kappa, F.delta(p.left)),
                        whisker_right(F.sigma.comp_inv(q.right, b1),
                                      compose(F.delta(c1), F.delta(p.left))),
                        whisker_left(F.sigma(w.span.right), F.delta.comp_inv(p.left, c1))});
  out.name = "beck-phi";
  return out;
}

FamNatTrans polyc_beck_dist_constraint(const LaxBeckTriple& t, const Polynomial& Q,
                                       const Polynomial& P) {
  auto w = compose_poly_witness(Q, P);
  const auto& d1 = w.D.proj1;
  const auto& d2 = w.D.proj2;
  const auto& pp = w.dpb.p;
  const auto& qq = w.dpb.q;
  const auto& rr = w.dpb.r;
  const auto& h1 = w.H.proj1;
  const auto& h2 = w.H.proj2;
  const auto& S = t.sigma;
  const auto& T = t.tensor;
  const auto& D = t.delta;

  // Sigma_(t2 r) T_(q h2) Delta_(s1 h1) split into its factors.
  auto split = nat_vcomp({whisker_left(compose({S(Q.t), S(rr), T(qq), T(h2)}),
                                       D.comp_inv(P.s, h1)),
                          whisker(compose(S(Q.t), S(rr)), T.comp_inv(qq, h2), D(w.poly.s)),
                          whisker_right(S.comp_inv(Q.t, rr), compose({T(w.poly.p), D(w.poly.s)}))});
  // Beck cell at the pullback H of p1 against d1 pp.
  auto b = whisker(compose({S(Q.t), S(rr), T(qq)}), t.beck(Square{P.p, w.d1p, h2, h1}),
                   D(P.s));
  auto b_split = whisker(compose({S(Q.t), S(rr), T(qq)}), D.comp_inv(d1, pp),
                         compose(T(P.p), D(P.s)));
  // Distributivity at the pullback around (q2, d2).
  auto dist = whisker(S(Q.t), distributivity_morphism(t, w.dpb),
                      compose({D(d1), T(P.p), D(P.s)}));
  // Sigma-delta Beck cell at the pullback D of t1 against s2.
  auto kappa = whisker(compose(S(Q.t), T(Q.p)), sigma_delta_beck(S, t.sigma_delta, Square{P.t, Q.s, d2, d1}),
                       compose(T(P.p), D(P.s)));
  auto out = nat_vcomp({kappa, dist, b_split, b, split});
  out.name = "beck-dist-phi";
  return out;
}

// Adjunction transport ------------------------------------------------------------

namespace {

template <class One, class Two>
Adjunction transport(const OplaxFunctor<One, Two>& L, const One& left, const One& right,
                     const Two& unit, const Two& counit) {
  const auto& X = left.source();
  const auto& Y = left.target();
  Adjunction out;
  out.left = L.one(left);
  out.right = L.one(right);
  out.unit = nat_vcomp({L.phi(right, left), L.two(unit), nat_inverse(L.lambda(X))});
  out.unit.name = "eta-bar";
  out.counit = nat_vcomp({L.lambda(Y), L.two(counit), nat_inverse(L.phi(left, right))});
  out.counit.name = "eps-bar";
  return out;
}

}  // namespace

Adjunction transport_adjunction(const SpanFunctor& L, const SpanAdjunction& adj) {
  return transport(L, adj.left, adj.right, adj.unit, adj.counit);
}

Adjunction transport_adjunction(const PolyCFunctor& L, const PolyAdjunction& adj) {
  if (!gen2_is_cartesian(adj.unit) || !gen2_is_cartesian(adj.counit))
    throw Error("transport_adjunction: unit or counit is not cartesian");
  return transport(L, adj.left, adj.right, gen2_to_cart(adj.unit), gen2_to_cart(adj.counit));
}

Adjunction transport_adjunction(const PolyFunctor& L, const PolyAdjunction& adj) {
  return transport(L, adj.left, adj.right, adj.unit, adj.counit);
}

// Extraction ------------------------------------------------------------------------

namespace {

template <class One, class Two>
Pseudofunctor pseudofunctor_on(const OplaxFunctor<One, Two>& L, std::string name,
                               bool contravariant, std::function<One(const FinMap&)> embed) {
  Pseudofunctor P;
  P.name = std::move(name);
  P.contravariant = contravariant;
  P.on_map = [L, embed](const FinMap& f) { return L.one(embed(f)); };
  P.comp = [L, embed, contravariant](const FinMap& g, const FinMap& f) {
    auto out = contravariant ? nat_inverse(L.phi(embed(f), embed(g)))
                             : nat_inverse(L.phi(embed(g), embed(f)));
    out.name = "comp";
    return out;
  };
  return P;
}

}  // namespace

Instance extract_sinister(const SpanFunctor& L) {
  Instance F;
  F.name = L.name;
  F.entry_cap = L.entry_cap;
  F.sigma = pseudofunctor_on<Span, SpanTwoCell>(L, "sigma", false, sigma_span);
  F.delta = pseudofunctor_on<Span, SpanTwoCell>(L, "delta", true, delta_span);
  F.sigma_delta = [L](const FinMap& f) { return transport_adjunction(L, span_adjunction(f)); };
  return F;
}

LaxBeckPair extract_pair(const SpanFunctor& K) {
  LaxBeckPair p;
  p.name = K.name;
  p.entry_cap = K.entry_cap;
  p.tensor = pseudofunctor_on<Span, SpanTwoCell>(K, "tensor", false, sigma_span);
  p.delta = pseudofunctor_on<Span, SpanTwoCell>(K, "delta", true, delta_span);
  p.beck = [K](const Square& sq) {
    auto w = compose_span_witness(delta_span(sq.g), sigma_span(sq.f));
    auto m = pullback_mediate(w.pb, sq.gp, sq.fp);
    SpanTwoCell cell(Span(sq.gp, sq.fp), w.span, m, CellMode::iso);
    auto out = nat_vcomp({K.phi(delta_span(sq.g), sigma_span(sq.f)), K.two(cell),
                          nat_inverse(K.phi(sigma_span(sq.fp), delta_span(sq.gp)))});
    out.name = "beck";
    return out;
  };
  return p;
}

LaxBeckTriple extract_triple(const PolyCFunctor& K) {
  auto sig = [](const FinMap& f) { return embed_arrow_poly(ArrowPoly::sigma, f); };
  auto del = [](const FinMap& f) { return embed_arrow_poly(ArrowPoly::delta, f); };
  auto ten = [](const FinMap& f) { return embed_arrow_poly(ArrowPoly::pi, f); };
  LaxBeckTriple t;
  t.name = K.name;
  t.entry_cap = K.entry_cap;
  t.sigma = pseudofunctor_on<Polynomial, CartTwoCell>(K, "sigma", false, sig);
  t.delta = pseudofunctor_on<Polynomial, CartTwoCell>(K, "delta", true, del);
  t.tensor = pseudofunctor_on<Polynomial, CartTwoCell>(K, "tensor", false, ten);
  t.sigma_delta = [K](const FinMap& f) {
    return transport_adjunction(K, poly_adjunction(PolyAdjMode::sigma_delta, f));
  };
  t.beck = [K, del, ten](const Square& sq) {
    auto w = compose_poly_witness(del(sq.g), ten(sq.f));
    auto m = pullback_mediate(w.H, sq.gp, sq.fp);
    Polynomial src(sq.gp, sq.fp, FinMap::identity(sq.fp.cod));
    CartTwoCell cell(src, w.poly, m, FinMap::identity(sq.fp.cod));
    auto out = nat_vcomp({K.phi(del(sq.g), ten(sq.f)), K.two(cell),
                          nat_inverse(K.phi(ten(sq.fp), del(sq.gp)))});
    out.name = "beck";
    return out;
  };
  return t;
}

// Bicategory operations used by the samplers -----------------------------------------

namespace {

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
  return seed * 0x9e3779b97f4a7c15ULL + salt;
}

struct Sizes {
  std::size_t set_hi;
  std::size_t apex_hi;
  std::size_t shapes_hi;
  std::size_t fiber_hi;
};

Sizes sizes_for(const CheckConfig& cfg, bool poly) {
  std::size_t hi = std::max<std::size_t>(1, cfg.max_size);
  if (poly) return {std::min<std::size_t>(hi, 2), 0, 2, 2};
  return {hi, hi, 0, 0};
}

struct SpanOps {
  bool iso = false;
  Sizes sz;

  Span compose(const Span& g, const Span& f) const { return compose_span(g, f); }
  Span identity(const FinSet& x) const { return Span::identity(x); }
  SpanTwoCell id2(const Span& a) const { return span_identity_2cell(a); }
  SpanTwoCell vcomp(const SpanTwoCell& b, const SpanTwoCell& a) const {
    return span_2cell_compose(Composition::vertical, b, a);
  }
  SpanTwoCell hcomp(const SpanTwoCell& b, const SpanTwoCell& a) const {
    return span_2cell_compose(Composition::horizontal, b, a);
  }
  SpanTwoCell assoc(const Span& h, const Span& g, const Span& f) const {
    return span_associator(h, g, f);
  }
  SpanTwoCell lunit(const Span& f) const { return span_coherence(Coherence::left_unitor, {f}); }
  SpanTwoCell runit(const Span& f) const { return span_coherence(Coherence::right_unitor, {f}); }
  Span sample(Rng& rng, const FinSet& x, const FinSet& y) const {
    return random_span(rng, x, y, sz.apex_hi);
  }
  SpanTwoCell sample_into(Rng& rng, const Span& tgt) const {
    return random_span_2cell_into(rng, tgt, sz.apex_hi, iso);
  }
  // A left adjoint (1, t); for Span_iso, t is a bijection.
  Span left_adjoint(Rng& rng, const FinSet& y) const {
    auto t = iso ? random_permutation(rng, y) : random_map_from(rng, y, 1, sz.set_hi);
    return sigma_span(t);
  }
};

// On Span_iso the tensor is applied along the right legs, whose fibers grow
// multiplicatively under composition; the tensor of the family instance is a
// dependent product, so sets and apexes stay at two there.
SpanOps span_ops(SourceTag source, const CheckConfig& cfg) {
  bool iso = source == SourceTag::span_iso;
  auto sz = sizes_for(cfg, false);
  if (iso) sz.set_hi = sz.apex_hi = std::min<std::size_t>(sz.set_hi, 2);
  return SpanOps{iso, sz};
}

struct PolyCOps {
  Sizes sz;

  Polynomial compose(const Polynomial& g, const Polynomial& f) const { return compose_poly(g, f); }
  Polynomial identity(const FinSet& x) const { return Polynomial::identity(x); }
  CartTwoCell id2(const Polynomial& a) const { return cart2_identity(a); }
  CartTwoCell vcomp(const CartTwoCell& b, const CartTwoCell& a) const {
    return cart2_compose(Composition::vertical, b, a);
  }
  CartTwoCell hcomp(const CartTwoCell& b, const CartTwoCell& a) const {
    return cart2_compose(Composition::horizontal, b, a);
  }
  CartTwoCell assoc(const Polynomial& h, const Polynomial& g, const Polynomial& f) const {
    return poly_associator(h, g, f);
  }
  CartTwoCell lunit(const Polynomial& f) const { return poly_coherence(Coherence::left_unitor, {f}); }
  CartTwoCell runit(const Polynomial& f) const { return poly_coherence(Coherence::right_unitor, {f}); }
  Polynomial sample(Rng& rng, const FinSet& x, const FinSet& y) const {
    return random_poly(rng, x, y, sz.shapes_hi, sz.fiber_hi);
  }
  CartTwoCell sample_into(Rng& rng, const Polynomial& tgt) const {
    return random_cart_into(rng, tgt, sz.shapes_hi);
  }
};

struct PolyOps {
  Sizes sz;

  Polynomial compose(const Polynomial& g, const Polynomial& f) const { return compose_poly(g, f); }
  Polynomial identity(const FinSet& x) const { return Polynomial::identity(x); }
  GeneralTwoCell id2(const Polynomial& a) const { return gen2_identity(a); }
  GeneralTwoCell vcomp(const GeneralTwoCell& b, const GeneralTwoCell& a) const {
    return gen2_compose(Composition::vertical, b, a);
  }
  GeneralTwoCell hcomp(const GeneralTwoCell& b, const GeneralTwoCell& a) const {
    return gen2_compose(Composition::horizontal, b, a);
  }
  GeneralTwoCell assoc(const Polynomial& h, const Polynomial& g, const Polynomial& f) const {
    return gen2_from_cart(poly_associator(h, g, f));
  }
  GeneralTwoCell lunit(const Polynomial& f) const {
    return gen2_from_cart(poly_coherence(Coherence::left_unitor, {f}));
  }
  GeneralTwoCell runit(const Polynomial& f) const {
    return gen2_from_cart(poly_coherence(Coherence::right_unitor, {f}));
  }
  Polynomial sample(Rng& rng, const FinSet& x, const FinSet& y) const {
    return random_poly(rng, x, y, sz.shapes_hi, sz.fiber_hi);
  }
  GeneralTwoCell sample_into(Rng& rng, const Polynomial& tgt) const {
    auto c = random_general_into(rng, tgt, sz.shapes_hi, 1);
    return rng.coin() ? reparameterize(rng, c) : c;
  }
};

template <class One, class Two, class Ops>
Report oplax_laws(const OplaxFunctor<One, Two>& L, const Ops& ops, const CheckConfig& cfg) {
  Report rep;
  auto budget = clamp(cfg.families, L.entry_cap);
  Rng rng(mix(cfg.seed, 101));
  auto hi = ops.sz.set_hi;
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    FinSet W = random_set(rng, 1, hi), X = random_set(rng, 1, hi), Y = random_set(rng, 1, hi),
           Z = random_set(rng, 1, hi);
    auto f = ops.sample(rng, W, X);
    auto g = ops.sample(rng, X, Y);
    auto h = ops.sample(rng, Y, Z);
    json in3 = json::array({encode(h), encode(g), encode(f)});
    json in1 = json::array({encode(f)});

    record(rep, "oplax.associativity", in3, [&] {
      auto hg = ops.compose(h, g), gf = ops.compose(g, f);
      auto lhs = nat_vcomp(whisker_right(L.phi(h, g), L.one(f)), L.phi(hg, f));
      auto rhs = nat_vcomp({whisker_left(L.one(h), L.phi(g, f)), L.phi(h, gf),
                            L.two(ops.assoc(h, g, f))});
      return nat_equal(lhs, rhs, budget);
    });
    record(rep, "oplax.left-unit", in1, [&] {
      auto lhs = nat_vcomp(whisker_right(L.lambda(X), L.one(f)), L.phi(ops.identity(X), f));
      return nat_equal(lhs, L.two(ops.lunit(f)), budget);
    });
    record(rep, "oplax.right-unit", in1, [&] {
      auto lhs = nat_vcomp(whisker_left(L.one(f), L.lambda(W)), L.phi(f, ops.identity(W)));
      return nat_equal(lhs, L.two(ops.runit(f)), budget);
    });
    record(rep, "oplax.local-identity", in1,
           [&] { return nat_equal(L.two(ops.id2(f)), nat_identity(L.one(f)), budget); });
    record(rep, "oplax.local-composition", in1, [&] {
      auto b = ops.sample_into(rng, f);
      auto a = ops.sample_into(rng, b.src);
      return nat_equal(L.two(ops.vcomp(b, a)), nat_vcomp(L.two(b), L.two(a)), budget);
    });
    record(rep, "oplax.phi-naturality", json::array({encode(g), encode(f)}), [&] {
      auto a = ops.sample_into(rng, f);
      auto b = ops.sample_into(rng, g);
      auto lhs = nat_vcomp(L.phi(g, f), L.two(ops.hcomp(b, a)));
      auto rhs = nat_vcomp(nat_hcomp(L.two(b), L.two(a)), L.phi(b.src, a.src));
      return nat_equal(lhs, rhs, budget);
    });
  }
  return rep;
}

template <class One, class Two, class Ops>
Report pseudo_laws(const OplaxFunctor<One, Two>& L, const Ops& ops, const CheckConfig& cfg) {
  Report rep;
  auto budget = clamp(cfg.families, L.entry_cap);
  Rng rng(mix(cfg.seed, 103));
  auto hi = ops.sz.set_hi;
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    FinSet X = random_set(rng, 1, hi), Y = random_set(rng, 1, hi), Z = random_set(rng, 1, hi);
    auto f = ops.sample(rng, X, Y);
    auto g = ops.sample(rng, Y, Z);
    record(rep, "pseudo.binary", json::array({encode(g), encode(f)}),
           [&] { return nat_is_iso(L.phi(g, f), budget); });
    record(rep, "pseudo.nullary", json::array({X.size}),
           [&] { return nat_is_iso(L.lambda(X), budget); });
  }
  return rep;
}

}  // namespace

Report check_oplax_laws(const SpanFunctor& L, const CheckConfig& cfg) {
  return oplax_laws(L, span_ops(L.source, cfg), cfg);
}

Report check_oplax_laws(const PolyCFunctor& L, const CheckConfig& cfg) {
  return oplax_laws(L, PolyCOps{sizes_for(cfg, true)}, cfg);
}

Report check_oplax_laws(const PolyFunctor& L, const CheckConfig& cfg) {
  return oplax_laws(L, PolyOps{sizes_for(cfg, true)}, cfg);
}

Report check_pseudo(const SpanFunctor& L, const CheckConfig& cfg) {
  return pseudo_laws(L, span_ops(L.source, cfg), cfg);
}

Report check_pseudo(const PolyCFunctor& L, const CheckConfig& cfg) {
  return pseudo_laws(L, PolyCOps{sizes_for(cfg, true)}, cfg);
}

// Gregariousness ----------------------------------------------------------------------

Report check_gregarious(const SpanFunctor& L, GregariousMode mode, const CheckConfig& cfg) {
  Report rep;
  auto ops = span_ops(L.source, cfg);
  auto budget = clamp(cfg.families, L.entry_cap);
  Rng rng(mix(cfg.seed, 107));
  auto hi = ops.sz.set_hi;
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    FinSet X = random_set(rng, 1, hi), Y = random_set(rng, 1, hi);
    if (mode == GregariousMode::constraint) {
      auto f = ops.sample(rng, X, Y);
      auto g = ops.left_adjoint(rng, Y);
      record(rep, "gregarious.constraint", json::array({encode(g), encode(f)}),
             [&] { return nat_is_iso(L.phi(g, f), budget); });
    } else {
      auto t = ops.left_adjoint(rng, X).right;
      record(rep, "gregarious.adjunction", json::array({encode(t)}), [&] {
        return triangle_identities(transport_adjunction(L, span_adjunction(t)), budget);
      });
    }
  }
  return rep;
}

Report check_gregarious(const PolyCFunctor& L, GregariousMode mode, const CheckConfig& cfg) {
  Report rep;
  PolyCOps ops{sizes_for(cfg, true)};
  auto budget = clamp(cfg.families, L.entry_cap);
  Rng rng(mix(cfg.seed, 109));
  auto hi = ops.sz.set_hi;
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    FinSet X = random_set(rng, 1, hi), Y = random_set(rng, 1, hi);
    auto t = random_map_from(rng, Y, 1, hi);
    if (mode == GregariousMode::constraint) {
      auto f = ops.sample(rng, X, Y);
      auto g = embed_arrow_poly(ArrowPoly::sigma, t);
      record(rep, "gregarious.constraint", json::array({encode(g), encode(f)}),
             [&] { return nat_is_iso(L.phi(g, f), budget); });
    } else {
      record(rep, "gregarious.adjunction", json::array({encode(t)}), [&] {
        return triangle_identities(
            transport_adjunction(L, poly_adjunction(PolyAdjMode::sigma_delta, t)), budget);
      });
    }
  }
  return rep;
}

Report check_gregarious(const PolyFunctor& L, GregariousMode mode, const CheckConfig& cfg) {
  Report rep;
  PolyOps ops{sizes_for(cfg, true)};
  auto budget = clamp(cfg.families, L.entry_cap);
  Rng rng(mix(cfg.seed, 113));
  auto hi = ops.sz.set_hi;
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    FinSet X = random_set(rng, 1, hi), Y = random_set(rng, 1, hi);
    auto t = random_map_from(rng, Y, 1, hi);
    if (mode == GregariousMode::constraint) {
      auto f = ops.sample(rng, X, Y);
      // Both generators with right adjoints: (1, 1, t) -| (t, 1, 1) and
      // (t', 1, 1) -| (1, t', 1), the latter going out of Y.
      auto g = embed_arrow_poly(ArrowPoly::sigma, t);
      record(rep, "gregarious.constraint", json::array({encode(g), encode(f)}),
             [&] { return nat_is_iso(L.phi(g, f), budget); });
      auto t2 = random_map_into(rng, Y, 1, hi);
      auto g2 = embed_arrow_poly(ArrowPoly::delta, t2);
      record(rep, "gregarious.constraint", json::array({encode(g2), encode(f)}),
             [&] { return nat_is_iso(L.phi(g2, f), budget); });
    } else {
      for (auto m : {PolyAdjMode::sigma_delta, PolyAdjMode::delta_pi})
        record(rep, "gregarious.adjunction", json::array({encode(t)}), [&] {
          return triangle_identities(transport_adjunction(L, poly_adjunction(m, t)), budget);
        });
    }
  }
  return rep;
}

// Comultiplication conditions ----------------------------------------------------------

Report check_comult(const SpanComult& C, const CheckConfig& cfg) {
  Report rep;
  auto budget = clamp(cfg.families, C.entry_cap);
  Rng rng(mix(cfg.seed, 127));
  std::size_t hi = std::max<std::size_t>(1, cfg.max_size);
  auto L = [&](const FinMap& s, const FinMap& t) { return C.one(Span(s, t)); };
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    FinSet M = random_set(rng, 0, hi);
    auto s = random_map(rng, M, random_set(rng, 1, hi));
    auto h = random_map(rng, M, random_set(rng, 1, hi));
    auto t = random_map(rng, M, random_set(rng, 1, hi));
    json in = json::array({encode(s), encode(h), encode(t)});

    record(rep, "comult.phi-naturality", in, [&] {
      auto m = random_map(rng, random_set(rng, 0, M.size == 0 ? 0 : hi), M);
      SpanDiagonal d1{compose_map(s, m), compose_map(h, m), compose_map(t, m)};
      auto lhs = nat_vcomp(C.Phi({s, h, t}), C.two(SpanTwoCell(Span(d1.s, d1.t), Span(s, t), m)));
      auto rhs = nat_vcomp(nat_hcomp(C.two(SpanTwoCell(Span(d1.h, d1.t), Span(h, t), m)),
                                     C.two(SpanTwoCell(Span(d1.s, d1.h), Span(s, h), m))),
                           C.Phi(d1));
      return nat_equal(lhs, rhs, budget);
    });
    record(rep, "comult.lambda-naturality", in, [&] {
      auto m = random_map(rng, random_set(rng, 0, M.size == 0 ? 0 : hi), M);
      auto hm = compose_map(h, m);
      auto lhs = nat_vcomp(C.Lambda(h), C.two(SpanTwoCell(Span(hm, hm), Span(h, h), m)));
      return nat_equal(lhs, C.Lambda(hm), budget);
    });
    record(rep, "comult.coassociativity", in, [&] {
      auto h2 = random_map(rng, M, random_set(rng, 1, hi));
      auto lhs = nat_vcomp(whisker_right(C.Phi({h, h2, t}), L(s, h)), C.Phi({s, h, t}));
      auto rhs = nat_vcomp(whisker_left(L(h2, t), C.Phi({s, h, h2})), C.Phi({s, h2, t}));
      return nat_equal(lhs, rhs, budget);
    });
    record(rep, "comult.counit", in, [&] {
      auto id = nat_identity(L(s, t));
      auto v = nat_equal(nat_vcomp(whisker_right(C.Lambda(t), L(s, t)), C.Phi({s, t, t})), id,
                         budget);
      if (!v.ok) return v;
      return nat_equal(nat_vcomp(whisker_left(L(s, t), C.Lambda(s)), C.Phi({s, s, t})), id,
                       budget);
    });
  }
  return rep;
}

namespace {

PolyDiagonal sample_poly_diagonal(Rng& rng, std::size_t hi) {
  FinSet Y = random_set(rng, 1, 2);
  auto p2 = random_map_into(rng, Y, 0, 2);
  auto p1 = random_map_into(rng, p2.dom, 0, 2);
  auto s = random_map(rng, p1.dom, random_set(rng, 1, hi));
  auto h = random_map(rng, p2.dom, random_set(rng, 1, hi));
  auto t = random_map(rng, Y, random_set(rng, 1, hi));
  return {s, p1, h, p2, t};
}

json encode(const PolyDiagonal& d) {
  return json::array({polyspan::encode(d.s), polyspan::encode(d.p1), polyspan::encode(d.h),
                      polyspan::encode(d.p2), polyspan::encode(d.t)});
}

}  // namespace

Report check_comult(const PolyCComult& C, const CheckConfig& cfg) {
  Report rep;
  auto budget = clamp(cfg.families, C.entry_cap);
  Rng rng(mix(cfg.seed, 131));
  std::size_t hi = std::min<std::size_t>(2, std::max<std::size_t>(1, cfg.max_size));
  auto L = [&](const FinMap& s, const FinMap& p, const FinMap& t) {
    return C.one(Polynomial(s, p, t));
  };
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    auto d = sample_poly_diagonal(rng, hi);
    auto in = encode(d);

    record(rep, "comult.phi-naturality", in, [&] {
      // Pull the diagonal back along w: Y' -> Y.
      auto w = random_map_into(rng, d.p2.cod, 1, 2);
      auto tpb = pullback(d.p2, w);
      auto epb = pullback(d.p1, tpb.proj1);
      const auto& eE = epb.proj1;
      const auto& eT = tpb.proj1;
      PolyDiagonal d1{compose_map(d.s, eE), epb.proj2, compose_map(d.h, eT), tpb.proj2,
                      compose_map(d.t, w)};
      CartTwoCell outer(Polynomial(d1.s, compose_map(d1.p2, d1.p1), d1.t),
                        Polynomial(d.s, compose_map(d.p2, d.p1), d.t), eE, w);
      CartTwoCell second(Polynomial(d1.h, d1.p2, d1.t), Polynomial(d.h, d.p2, d.t), eT, w);
      CartTwoCell first(Polynomial(d1.s, d1.p1, d1.h), Polynomial(d.s, d.p1, d.h), eE, eT);
      auto lhs = nat_vcomp(C.Phi(d), C.two(outer));
      auto rhs = nat_vcomp(nat_hcomp(C.two(second), C.two(first)), C.Phi(d1));
      return nat_equal(lhs, rhs, budget);
    });
    record(rep, "comult.lambda-naturality", in, [&] {
      auto m = random_map(rng, random_set(rng, 0, d.h.dom.size == 0 ? 0 : 2), d.h.dom);
      auto hm = compose_map(d.h, m);
      CartTwoCell cell(Polynomial(hm, FinMap::identity(m.dom), hm),
                       Polynomial(d.h, FinMap::identity(d.h.dom), d.h), m, m);
      return nat_equal(nat_vcomp(C.Lambda(d.h), C.two(cell)), C.Lambda(hm), budget);
    });
    record(rep, "comult.coassociativity", in, [&] {
      // Refine the diagonal with a middle stage T1 -p2'-> T2 -p3-> Y.
      auto p3 = d.p2;
      auto p2 = FinMap::identity(d.p2.dom);
      auto h2 = random_map(rng, p3.dom, random_set(rng, 1, hi));
      if (rng.coin()) {
        // Split T into a finer T1 over it.
        auto split = random_map_into(rng, d.p2.dom, 0, 2);
        p2 = split;
      }
      FinSet T1 = p2.dom;
      auto p1 = random_map(rng, FinSet(T1.size == 0 ? 0 : d.p1.dom.size), T1);
      auto s = random_map(rng, p1.dom, d.s.cod);
      auto h1 = random_map(rng, T1, d.h.cod);
      auto p32 = compose_map(p3, p2);
      auto lhs = nat_vcomp(whisker_right(C.Phi({h1, p2, h2, p3, d.t}), L(s, p1, h1)),
                           C.Phi({s, p1, h1, p32, d.t}));
      auto rhs = nat_vcomp(whisker_left(L(h2, p3, d.t), C.Phi({s, p1, h1, p2, h2})),
                           C.Phi({s, compose_map(p2, p1), h2, p3, d.t}));
      return nat_equal(lhs, rhs, budget);
    });
    record(rep, "comult.counit", in, [&] {
      auto p = compose_map(d.p2, d.p1);
      auto id = nat_identity(L(d.s, p, d.t));
      auto idY = FinMap::identity(d.t.dom);
      auto idE = FinMap::identity(d.s.dom);
      auto v = nat_equal(nat_vcomp(whisker_right(C.Lambda(d.t), L(d.s, p, d.t)),
                                   C.Phi({d.s, p, d.t, idY, d.t})),
                         id, budget);
      if (!v.ok) return v;
      return nat_equal(nat_vcomp(whisker_left(L(d.s, p, d.t), C.Lambda(d.s)),
                                 C.Phi({d.s, idE, d.s, p, d.t})),
                       id, budget);
    });
  }
  return rep;
}

// Round trips ----------------------------------------------------------------------------

Report check_reduction(const SpanFunctor& L, const CheckConfig& cfg) {
  // Diagonal cells are not invertible, so there is no comultiplication form on Span_iso.
  if (L.source != SourceTag::span) throw Error("check_reduction: needs a functor out of Span");
  Report rep;
  auto budget = clamp(cfg.families, L.entry_cap);
  auto C = to_comult(L);
  auto L2 = to_constraints(C);
  auto C2 = to_comult(L2);
  SpanOps ops{false, sizes_for(cfg, false)};
  Rng rng(mix(cfg.seed, 137));
  auto hi = ops.sz.set_hi;
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    FinSet X = random_set(rng, 1, hi), Y = random_set(rng, 1, hi), Z = random_set(rng, 1, hi);
    auto f = ops.sample(rng, X, Y);
    auto g = ops.sample(rng, Y, Z);
    record(rep, "reduction.constraints-round-trip", json::array({encode(g), encode(f)}),
           [&] { return nat_equal(L2.phi(g, f), L.phi(g, f), budget); });
    record(rep, "reduction.unit-round-trip", json::array({X.size}),
           [&] { return nat_equal(L2.lambda(X), L.lambda(X), budget); });
    FinSet M = random_set(rng, 0, hi);
    SpanDiagonal d{random_map(rng, M, X), random_map(rng, M, Y), random_map(rng, M, Z)};
    json in = json::array({encode(d.s), encode(d.h), encode(d.t)});
    record(rep, "reduction.comult-round-trip", in,
           [&] { return nat_equal(C2.Phi(d), C.Phi(d), budget); });
    record(rep, "reduction.counit-round-trip", in,
           [&] { return nat_equal(C2.Lambda(d.h), C.Lambda(d.h), budget); });
  }
  rep.append(check_comult(C, cfg));
  return rep;
}

Report check_reduction(const PolyCFunctor& L, const CheckConfig& cfg) {
  Report rep;
  auto budget = clamp(cfg.families, L.entry_cap);
  auto C = to_comult(L);
  auto L2 = to_constraints(C);
  auto C2 = to_comult(L2);
  PolyCOps ops{sizes_for(cfg, true)};
  Rng rng(mix(cfg.seed, 139));
  auto hi = ops.sz.set_hi;
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    FinSet X = random_set(rng, 1, hi), Y = random_set(rng, 1, hi), Z = random_set(rng, 1, hi);
    auto f = ops.sample(rng, X, Y);
    auto g = ops.sample(rng, Y, Z);
    // Both round trips nest composites of composites, whose families grow
    // doubly exponentially; the sampled composites are kept small.
    for (auto c = compose_poly(g, f); c.shapes().size > 4 || c.positions().size > 4;
         c = compose_poly(g, f)) {
      f = ops.sample(rng, X, Y);
      g = ops.sample(rng, Y, Z);
    }
    record(rep, "reduction.constraints-round-trip", json::array({encode(g), encode(f)}),
           [&] { return nat_equal(L2.phi(g, f), L.phi(g, f), budget); });
    record(rep, "reduction.unit-round-trip", json::array({X.size}),
           [&] { return nat_equal(L2.lambda(X), L.lambda(X), budget); });
    auto d = sample_poly_diagonal(rng, hi);
    while (compose_poly(Polynomial(d.h, d.p2, d.t), Polynomial(d.s, d.p1, d.h)).shapes().size > 3)
      d = sample_poly_diagonal(rng, hi);
    record(rep, "reduction.comult-round-trip", encode(d),
           [&] { return nat_equal(C2.Phi(d), C.Phi(d), budget); });
    record(rep, "reduction.counit-round-trip", encode(d),
           [&] { return nat_equal(C2.Lambda(d.h), C.Lambda(d.h), budget); });
  }
  rep.append(check_comult(C, cfg));
  return rep;
}

// Icons ------------------------------------------------------------------------------------

namespace {

// Id => ConjInv, components the inverse permutations.
FamNatTrans conj_inv_iso(const FinSet& x, std::uint64_t seed) {
  auto tgt = FamFunctor::conj_inv(x, seed);
  return FamNatTrans{FamFunctor::identity(x), tgt,
                     [seed](const Family& y) {
                       std::vector<FinMap> comps;
                       for (std::size_t i = 0; i < y.index.size; ++i)
                         comps.push_back(conj_permutation(seed, i, y.size(i)).inverse());
                       return FamilyMap(y, y, std::move(comps));
                     },
                     "rho-inv"};
}

template <class One, class Two>
OplaxFunctor<One, Two> conjugate_impl(const OplaxFunctor<One, Two>& L, std::uint64_t seed) {
  auto C = [seed](const FinSet& x) { return FamFunctor::conj(x, seed); };
  auto Ci = [seed](const FinSet& x) { return FamFunctor::conj_inv(x, seed); };
  OplaxFunctor<One, Two> K;
  K.name = "conj(" + L.name + ")";
  K.source = L.source;
  K.entry_cap = L.entry_cap;
  K.one = [L, C, Ci](const One& P) {
    return compose({C(P.target()), L.one(P), Ci(P.source())});
  };
  K.two = [L, C, Ci](const Two& c) {
    return whisker(C(c.src.target()), L.two(c), Ci(c.src.source()));
  };
  K.phi = [L, C, Ci](const One& g, const One& f) {
    const auto& X = f.source();
    const auto& Y = f.target();
    const auto& Z = g.target();
    auto a = whisker(C(Z), L.phi(g, f), Ci(X));
    auto from = compose({C(Z), L.one(g), L.one(f), Ci(X)});
    auto to = compose({C(Z), L.one(g), Ci(Y), C(Y), L.one(f), Ci(X)});
    auto out = nat_vcomp(nat_cast(from, to), a);
    out.name = "phi";
    return out;
  };
  K.lambda = [L, C, Ci](const FinSet& x) {
    auto a = whisker(C(x), L.lambda(x), Ci(x));
    auto out = nat_vcomp(nat_cast(compose(C(x), Ci(x)), FamFunctor::identity(x)), a);
    out.name = "lambda";
    return out;
  };
  return K;
}

template <class One, class Two>
Icon<One, Two> conjugation_icon_impl(const OplaxFunctor<One, Two>& L, std::uint64_t seed) {
  Icon<One, Two> a;
  a.src = L;
  a.tgt = conjugate_impl(L, seed);
  a.component = [L, seed](const One& P) {
    auto LP = L.one(P);
    auto rho = conj_iso(P.target(), seed);
    auto out = nat_vcomp(whisker_right(whisker_right(rho, LP), FamFunctor::conj_inv(P.source(), seed)),
                         whisker_left(LP, conj_inv_iso(P.source(), seed)));
    out.name = "conj-icon";
    return out;
  };
  return a;
}

}  // namespace

SpanFunctor conjugate(const SpanFunctor& L, std::uint64_t seed) { return conjugate_impl(L, seed); }
PolyCFunctor conjugate(const PolyCFunctor& L, std::uint64_t seed) { return conjugate_impl(L, seed); }

SpanIcon conjugation_icon(const SpanFunctor& L, std::uint64_t seed) {
  return conjugation_icon_impl(L, seed);
}

PolyCIcon conjugation_icon(const PolyCFunctor& L, std::uint64_t seed) {
  return conjugation_icon_impl(L, seed);
}

SpanIcon identity_icon(const SpanFunctor& L) {
  return SpanIcon{L, L, [L](const Span& P) { return nat_identity(L.one(P)); }};
}

SpanIcon icon_extend(const GeneratorRule& at_sigma, const SpanFunctor& L, const SpanFunctor& K) {
  auto at_delta = [at_sigma, L, K](const FinMap& s) {
    auto adj = span_adjunction(s);
    auto out = mate(nat_inverse(at_sigma(s)), FamFunctor::identity(s.dom),
                    FamFunctor::identity(s.cod), transport_adjunction(L, adj),
                    transport_adjunction(K, adj));
    out.name = "icon-delta";
    return out;
  };
  SpanIcon a;
  a.src = L;
  a.tgt = K;
  a.component = [at_sigma, at_delta, L, K](const Span& P) {
    auto up = sigma_span(P.right);
    auto down = delta_span(P.left);
    auto out = nat_vcomp({nat_inverse(K.phi(up, down)),
                          nat_hcomp(at_sigma(P.right), at_delta(P.left)), L.phi(up, down)});
    out.name = "icon";
    return out;
  };
  return a;
}

PolyCIcon icon_extend(const GeneratorRule& at_sigma, const GeneratorRule& at_tensor,
                      const PolyCFunctor& L, const PolyCFunctor& K) {
  auto at_delta = [at_sigma, L, K](const FinMap& s) {
    auto adj = poly_adjunction(PolyAdjMode::sigma_delta, s);
    auto out = mate(nat_inverse(at_sigma(s)), FamFunctor::identity(s.dom),
                    FamFunctor::identity(s.cod), transport_adjunction(L, adj),
                    transport_adjunction(K, adj));
    out.name = "icon-delta";
    return out;
  };
  PolyCIcon a;
  a.src = L;
  a.tgt = K;
  a.component = [at_sigma, at_tensor, at_delta, L, K](const Polynomial& P) {
    auto up = embed_arrow_poly(ArrowPoly::sigma, P.t);
    auto mid = embed_arrow_poly(ArrowPoly::pi, P.p);
    auto down = embed_arrow_poly(ArrowPoly::delta, P.s);
    auto md = compose_poly(mid, down);
    auto split_L = nat_vcomp(whisker_left(L.one(up), L.phi(mid, down)), L.phi(up, md));
    auto join_K = nat_vcomp(nat_inverse(K.phi(up, md)),
                            whisker_left(K.one(up), nat_inverse(K.phi(mid, down))));
    auto middle = nat_hcomp(at_sigma(P.t), nat_hcomp(at_tensor(P.p), at_delta(P.s)));
    auto out = nat_vcomp({join_K, middle, split_L});
    out.name = "icon";
    return out;
  };
  return a;
}

FamNatTrans icon_mate_inverse(const SpanIcon& a, const FinMap& f) {
  auto adj = span_adjunction(f);
  auto out = mate_inverse(a.component(delta_span(f)), FamFunctor::identity(f.dom),
                          FamFunctor::identity(f.cod), transport_adjunction(a.src, adj),
                          transport_adjunction(a.tgt, adj));
  out.name = "icon-mateinv";
  return out;
}

namespace {

template <class One, class Two, class Ops>
Report icon_laws(const Icon<One, Two>& a, const Ops& ops, const CheckConfig& cfg) {
  Report rep;
  const auto& L = a.src;
  const auto& K = a.tgt;
  auto budget = clamp(cfg.families, L.entry_cap);
  Rng rng(mix(cfg.seed, 149));
  auto hi = ops.sz.set_hi;
  const std::string note = "checked on constructed examples";
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    FinSet X = random_set(rng, 1, hi), Y = random_set(rng, 1, hi), Z = random_set(rng, 1, hi);
    auto f = ops.sample(rng, X, Y);
    auto g = ops.sample(rng, Y, Z);
    auto add = [&](const std::string& law, json in, auto check) {
      try {
        rep.add(law, std::move(in), check(), note);
      } catch (const Error& e) {
        rep.add_failure(law, std::move(in), e.what());
      }
    };
    add("icon.naturality", json::array({encode(f)}), [&] {
      auto c = ops.sample_into(rng, f);
      return nat_equal(nat_vcomp(K.two(c), a.component(c.src)),
                       nat_vcomp(a.component(c.tgt), L.two(c)), budget);
    });
    add("icon.composition", json::array({encode(g), encode(f)}), [&] {
      auto gf = ops.compose(g, f);
      return nat_equal(nat_vcomp(K.phi(g, f), a.component(gf)),
                       nat_vcomp(nat_hcomp(a.component(g), a.component(f)), L.phi(g, f)), budget);
    });
    add("icon.unit", json::array({X.size}), [&] {
      return nat_equal(nat_vcomp(K.lambda(X), a.component(ops.identity(X))), L.lambda(X), budget);
    });
  }
  return rep;
}

}  // namespace

Report check_icon(const SpanIcon& a, const CheckConfig& cfg) {
  return icon_laws(a, span_ops(a.src.source, cfg), cfg);
}

Report check_icon(const PolyCIcon& a, const CheckConfig& cfg) {
  return icon_laws(a, PolyCOps{sizes_for(cfg, true)}, cfg);
}

// Fault fixtures ----------------------------------------------------------------------------

FamNatTrans scramble(const FamNatTrans& a) {
  return FamNatTrans{a.src, a.tgt,
                     [a](const Family& x) {
                       auto m = a.at(x);
                       for (auto& c : m.components) {
                         if (c.dom.size < 2) continue;
                         std::reverse(c.table.begin(), c.table.end());
                       }
                       return m;
                     },
                     "scrambled(" + a.name + ")"};
}

LaxBeckTriple with_broken_beck(const LaxBeckTriple& t) {
  auto out = t;
  out.name = t.name + "+broken-beck";
  auto beck = t.beck;
  out.beck = [beck](const Square& sq) { return scramble(beck(sq)); };
  return out;
}

SpanFunctor with_broken_phi(const SpanFunctor& L) {
  auto out = L;
  out.name = L.name + "+broken-phi";
  auto phi = L.phi;
  out.phi = [phi](const Span& g, const Span& f) { return scramble(phi(g, f)); };
  return out;
}

PolyCFunctor with_broken_phi(const PolyCFunctor& L) {
  auto out = L;
  out.name = L.name + "+broken-phi";
  auto phi = L.phi;
  out.phi = [phi](const Polynomial& g, const Polynomial& f) { return scramble(phi(g, f)); };
  return out;
}

SpanFunctor non_gregarious_toy(const Instance& F) {
  auto L = build_span_oplax(F);
  L.name = "toy:" + F.name;
  auto phi = L.phi;
  L.phi = [phi](const Span& q, const Span& p) {
    auto a = phi(q, p);
    if (!(p.right == q.left) || p.right.is_injective()) return a;
    // Kernel pair of a non-injective map: send every element to the first one.
    return FamNatTrans{a.src, a.tgt,
                       [a](const Family& x) {
                         auto m = a.at(x);
                         for (auto& c : m.components)
                           std::fill(c.table.begin(), c.table.end(), std::size_t{0});
                         return m;
                       },
                       "collapsed"};
  };
  return L;
}

Square non_pullback_square() {
  FinMap f(FinSet(2), FinSet(1), {0, 0});
  auto pt = FinMap::constant(FinSet(1), FinSet(2), 0);
  return Square{f, f, pt, pt};
}

}  // namespace polyspan
