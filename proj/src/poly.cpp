#include "polyspan/poly.hpp"

#include <algorithm>
#include <map>

namespace polyspan {

Polynomial::Polynomial(FinMap s_, FinMap p_, FinMap t_)
    : s(std::move(s_)), p(std::move(p_)), t(std::move(t_)) {
  if (!(s.dom == p.dom)) throw Error("Polynomial: s and p have different domains");
  if (!(p.cod == t.dom)) throw Error("Polynomial: p does not land in the domain of t");
}

Polynomial Polynomial::identity(const FinSet& x) {
  auto id = FinMap::identity(x);
  return Polynomial(id, id, id);
}

static void require_parallel(const Polynomial& a, const Polynomial& b, const char* who) {
  if (!(a.source() == b.source()) || !(a.target() == b.target()))
    throw Error(std::string(who) + ": polynomials are not parallel");
}

CartTwoCell::CartTwoCell(Polynomial a, Polynomial b, FinMap sigma_, FinMap nu_)
    : src(std::move(a)), tgt(std::move(b)), sigma(std::move(sigma_)), nu(std::move(nu_)) {
  require_parallel(src, tgt, "CartTwoCell");
  if (!(sigma.dom == src.positions()) || !(sigma.cod == tgt.positions()) ||
      !(nu.dom == src.shapes()) || !(nu.cod == tgt.shapes()))
    throw Error("CartTwoCell: components have the wrong boundary");
  if (compose_map(tgt.s, sigma) != src.s) throw Error("CartTwoCell: u sigma != s");
  if (compose_map(tgt.t, nu) != src.t) throw Error("CartTwoCell: v nu != t");
  if (compose_map(tgt.p, sigma) != compose_map(nu, src.p))
    throw Error("CartTwoCell: middle square does not commute");
  if (!is_pullback_square(sigma, src.p, tgt.p, nu))
    throw Error("CartTwoCell: middle square is not a pullback");
}

GeneralTwoCell::GeneralTwoCell(Polynomial a, Polynomial b, FinMap e_, FinMap f_, FinMap g_)
    : src(std::move(a)), tgt(std::move(b)), e(std::move(e_)), f(std::move(f_)), g(std::move(g_)) {
  require_parallel(src, tgt, "GeneralTwoCell");
  if (!(e.dom == f.dom) || !(e.cod == src.positions()) || !(f.cod == tgt.positions()) ||
      !(g.dom == src.shapes()) || !(g.cod == tgt.shapes()))
    throw Error("GeneralTwoCell: components have the wrong boundary");
  if (compose_map(tgt.t, g) != src.t) throw Error("GeneralTwoCell: v g != t");
  if (compose_map(src.s, e) != compose_map(tgt.s, f))
    throw Error("GeneralTwoCell: s e != u f");
  FinMap pe = compose_map(src.p, e);
  if (compose_map(tgt.p, f) != compose_map(g, pe))
    throw Error("GeneralTwoCell: square over g does not commute");
  if (!is_pullback_square(f, pe, tgt.p, g))
    throw Error("GeneralTwoCell: square over g is not a pullback");
  auto pb = pullback(g, tgt.p);
  canonical = pullback_mediate(pb, pe, f).is_identity();
}

bool GeneralTwoCell::operator==(const GeneralTwoCell& o) const {
  if (!(src == o.src) || !(tgt == o.tgt) || !(g == o.g)) return false;
  const auto& a = canonical ? *this : gen2_normalize(*this);
  const auto& b = o.canonical ? o : gen2_normalize(o);
  return a.e == b.e;
}

PolyComposite compose_poly_witness(const Polynomial& second, const Polynomial& first) {
  if (!(first.target() == second.source()))
    throw Error("compose_poly: target of the first polynomial differs from source of the second");
  PolyComposite c;
  c.D = pullback(first.t, second.s);
  c.dpb = dist_pullback(second.p, c.D.proj2);
  c.d1p = compose_map(c.D.proj1, c.dpb.p);
  c.H = pullback(first.p, c.d1p);
  c.poly = Polynomial(compose_map(first.s, c.H.proj1), compose_map(c.dpb.q, c.H.proj2),
                      compose_map(second.t, c.dpb.r));
  return c;
}

Polynomial compose_poly(const Polynomial& second, const Polynomial& first) {
  return compose_poly_witness(second, first).poly;
}

static std::vector<std::size_t> fiber_list(const FinMap& f, std::size_t b) {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < f.dom.size; ++x)
    if (f.table[x] == b) out.push_back(x);
  return out;
}

CompositeShape decode_shape(const PolyComposite& c, std::size_t y) {
  CompositeShape sh;
  sh.outer = c.dpb.r(y);
  sh.positions = fiber_list(c.dpb.f, sh.outer);
  const auto& sec = c.dpb.sections.at(y);
  if (sec.size() != sh.positions.size()) throw Error("decode_shape: malformed section");
  for (auto d : sec) sh.inner.push_back(c.D.proj1(d));
  return sh;
}

CompositePosition decode_position(const PolyComposite& c, std::size_t h) {
  auto [e, tt] = c.H.pairs.at(h);
  auto [a, y] = c.dpb.tpb.pairs.at(tt);
  return CompositePosition{y, a, e};
}

std::size_t encode_shape(const PolyComposite& c, std::size_t outer,
                         const std::vector<std::size_t>& inner) {
  auto positions = fiber_list(c.dpb.f, outer);
  if (positions.size() != inner.size()) throw Error("encode_shape: wrong number of inner shapes");
  std::vector<std::size_t> sec(inner.size());
  for (std::size_t k = 0; k < inner.size(); ++k) sec[k] = c.D.at(inner[k], positions[k]);
  auto y = c.dpb.section_index(outer, sec);
  if (!y) throw Error("encode_shape: no such composite shape");
  return *y;
}

std::size_t encode_position(const PolyComposite& c, std::size_t shape, std::size_t outer,
                            std::size_t inner) {
  return c.H.at(inner, c.dpb.tpb.at(outer, shape));
}

CartTwoCell cart2_identity(const Polynomial& p) {
  return CartTwoCell(p, p, FinMap::identity(p.positions()), FinMap::identity(p.shapes()));
}

CartTwoCell cart2_compose(Composition mode, const CartTwoCell& beta, const CartTwoCell& alpha) {
  if (mode == Composition::vertical) {
    if (!(alpha.tgt == beta.src)) throw Error("cart2_compose: vertical boundary mismatch");
    return CartTwoCell(alpha.src, beta.tgt, compose_map(beta.sigma, alpha.sigma),
                       compose_map(beta.nu, alpha.nu));
  }
  auto c = compose_poly_witness(beta.src, alpha.src);
  auto c2 = compose_poly_witness(beta.tgt, alpha.tgt);
  const auto& Q2 = beta.tgt;
  std::vector<std::size_t> nu(c.poly.shapes().size);
  for (std::size_t y = 0; y < nu.size(); ++y) {
    auto sh = decode_shape(c, y);
    std::size_t outer2 = beta.nu(sh.outer);
    auto positions2 = fiber_list(Q2.p, outer2);
    std::vector<std::size_t> inner2(positions2.size());
    for (std::size_t j = 0; j < positions2.size(); ++j) {
      // beta.sigma restricts to a bijection of fibers; find the preimage.
      std::size_t k = 0;
      while (k < sh.positions.size() && beta.sigma(sh.positions[k]) != positions2[j]) ++k;
      if (k == sh.positions.size()) throw Error("cart2_compose: fiber is not preserved");
      inner2[j] = alpha.nu(sh.inner[k]);
    }
    nu[y] = encode_shape(c2, outer2, inner2);
  }
  FinMap nu_map(c.poly.shapes(), c2.poly.shapes(), std::move(nu));
  std::vector<std::size_t> sigma(c.poly.positions().size);
  for (std::size_t h = 0; h < sigma.size(); ++h) {
    auto dp = decode_position(c, h);
    sigma[h] = encode_position(c2, nu_map(dp.shape), beta.sigma(dp.outer), alpha.sigma(dp.inner));
  }
  return CartTwoCell(c.poly, c2.poly, FinMap(c.poly.positions(), c2.poly.positions(), sigma),
                     nu_map);
}

GeneralTwoCell gen2_normalize(const GeneralTwoCell& a) {
  if (a.canonical) return a;
  auto pb = pullback(a.g, a.tgt.p);
  FinMap med = pullback_mediate(pb, compose_map(a.src.p, a.e), a.f);
  if (!med.is_bijection()) throw Error("gen2_normalize: representative is not a pullback");
  GeneralTwoCell n(a.src, a.tgt, compose_map(a.e, med.inverse()), pb.proj2, a.g);
  if (!n.canonical) throw Error("gen2_normalize: internal error, result not canonical");
  return n;
}

GeneralTwoCell gen2_from_cart(const CartTwoCell& c) {
  return gen2_normalize(
      GeneralTwoCell(c.src, c.tgt, FinMap::identity(c.src.positions()), c.sigma, c.nu));
}

GeneralTwoCell gen2_triangle(const Polynomial& src, const Polynomial& tgt, const FinMap& e) {
  if (!(src.shapes() == tgt.shapes()) || src.t != tgt.t)
    throw Error("gen2_triangle: polynomials do not share shapes");
  return gen2_normalize(GeneralTwoCell(src, tgt, e, FinMap::identity(tgt.positions()),
                                       FinMap::identity(src.shapes())));
}

GeneralTwoCell gen2_identity(const Polynomial& p) {
  return gen2_triangle(p, p, FinMap::identity(p.positions()));
}

GeneralFactorization gen2_factor(const GeneralTwoCell& a) {
  auto n = gen2_normalize(a);
  Polynomial middle(compose_map(n.tgt.s, n.f), compose_map(n.src.p, n.e), n.src.t);
  return GeneralFactorization{middle, n.e, CartTwoCell(middle, n.tgt, n.f, n.g)};
}

bool gen2_is_cartesian(const GeneralTwoCell& a) { return gen2_normalize(a).e.is_bijection(); }

CartTwoCell gen2_to_cart(const GeneralTwoCell& a) {
  auto n = gen2_normalize(a);
  if (!n.e.is_bijection()) throw Error("gen2_to_cart: cell is not cartesian");
  return CartTwoCell(n.src, n.tgt, compose_map(n.f, n.e.inverse()), n.g);
}

GeneralTwoCell gen2_compose(Composition mode, const GeneralTwoCell& beta,
                            const GeneralTwoCell& alpha) {
  if (mode == Composition::vertical) {
    if (!(alpha.tgt == beta.src)) throw Error("gen2_compose: vertical boundary mismatch");
    auto fa = gen2_factor(alpha);  // P => Pm => Q
    auto fb = gen2_factor(beta);   // Q => Qm => R
    // Move the triangle of beta past the cartesian part of alpha:
    // S'' = S1 x_M S2, so that Pm => Qm' factors as triangle then cartesian.
    auto sw = pullback(fa.cart.sigma, fb.e);
    Polynomial swapped(compose_map(fb.middle.s, sw.proj2), compose_map(fa.middle.p, sw.proj1),
                       fa.middle.t);
    CartTwoCell swapped_cart(swapped, fb.middle, sw.proj2, fa.cart.nu);
    auto cart = cart2_compose(Composition::vertical, fb.cart, swapped_cart);
    return gen2_normalize(
        GeneralTwoCell(alpha.src, beta.tgt, compose_map(fa.e, sw.proj1), cart.sigma, cart.nu));
  }

  auto a = gen2_normalize(alpha);
  auto b = gen2_normalize(beta);
  auto pa = pullback(a.g, a.tgt.p);
  auto pbb = pullback(b.g, b.tgt.p);
  auto c = compose_poly_witness(b.src, a.src);
  auto c2 = compose_poly_witness(b.tgt, a.tgt);

  std::vector<std::size_t> gt(c.poly.shapes().size);
  std::vector<CompositeShape> shapes(gt.size());
  for (std::size_t y = 0; y < gt.size(); ++y) {
    auto sh = decode_shape(c, y);
    std::size_t outer2 = b.g(sh.outer);
    auto positions2 = fiber_list(b.tgt.p, outer2);
    std::vector<std::size_t> inner2(positions2.size());
    for (std::size_t j = 0; j < positions2.size(); ++j) {
      std::size_t back = b.e(pbb.at(sh.outer, positions2[j]));
      auto k = static_cast<std::size_t>(
          std::lower_bound(sh.positions.begin(), sh.positions.end(), back) - sh.positions.begin());
      inner2[j] = a.g(sh.inner.at(k));
    }
    gt[y] = encode_shape(c2, outer2, inner2);
    shapes[y] = std::move(sh);
  }
  FinMap g(c.poly.shapes(), c2.poly.shapes(), std::move(gt));
  auto S = pullback(g, c2.poly.p);
  std::vector<std::size_t> et(S.apex.size);
  for (std::size_t i = 0; i < et.size(); ++i) {
    auto [y, h2] = S.pairs[i];
    const auto& sh = shapes[y];
    auto dp = decode_position(c2, h2);
    std::size_t back = b.e(pbb.at(sh.outer, dp.outer));
    auto k = static_cast<std::size_t>(
        std::lower_bound(sh.positions.begin(), sh.positions.end(), back) - sh.positions.begin());
    std::size_t inner = a.e(pa.at(sh.inner.at(k), dp.inner));
    et[i] = encode_position(c, y, back, inner);
  }
  GeneralTwoCell out(c.poly, c2.poly, FinMap(S.apex, c.poly.positions(), std::move(et)), S.proj2,
                     g);
  if (!out.canonical) throw Error("gen2_compose: internal error, result not canonical");
  return out;
}

using ShapeKey = std::vector<std::size_t>;

CartTwoCell poly_associator(const Polynomial& r, const Polynomial& q, const Polynomial& p) {
  auto rq = compose_poly_witness(r, q);
  auto L = compose_poly_witness(rq.poly, p);
  auto qp = compose_poly_witness(q, p);
  auto R = compose_poly_witness(r, qp.poly);

  std::map<ShapeKey, std::size_t> right_index;
  for (std::size_t z = 0; z < R.poly.shapes().size; ++z) {
    auto sh = decode_shape(R, z);
    ShapeKey key{sh.outer};
    std::vector<CompositeShape> mids;
    for (auto x : sh.inner) {
      mids.push_back(decode_shape(qp, x));
      key.push_back(mids.back().outer);
    }
    for (const auto& m : mids) key.insert(key.end(), m.inner.begin(), m.inner.end());
    right_index[key] = z;
  }

  std::vector<std::size_t> nu(L.poly.shapes().size);
  for (std::size_t y = 0; y < nu.size(); ++y) {
    auto sh = decode_shape(L, y);
    auto w = decode_shape(rq, sh.outer);
    ShapeKey key{w.outer};
    key.insert(key.end(), w.inner.begin(), w.inner.end());
    std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::size_t>> leaves;
    for (std::size_t k = 0; k < sh.positions.size(); ++k) {
      auto dp = decode_position(rq, sh.positions[k]);
      leaves.push_back({{dp.outer, dp.inner}, sh.inner[k]});
    }
    std::sort(leaves.begin(), leaves.end());
    for (auto& lf : leaves) key.push_back(lf.second);
    auto it = right_index.find(key);
    if (it == right_index.end()) throw Error("poly_associator: internal error, unmatched shape");
    nu[y] = it->second;
  }
  FinMap nu_map(L.poly.shapes(), R.poly.shapes(), std::move(nu));

  std::vector<std::size_t> sigma(L.poly.positions().size);
  for (std::size_t h = 0; h < sigma.size(); ++h) {
    auto dp = decode_position(L, h);
    auto mid = decode_position(rq, dp.outer);
    std::size_t z = nu_map(dp.shape);
    auto shz = decode_shape(R, z);
    auto k = static_cast<std::size_t>(
        std::lower_bound(shz.positions.begin(), shz.positions.end(), mid.outer) -
        shz.positions.begin());
    std::size_t x = shz.inner.at(k);
    std::size_t qp_pos = encode_position(qp, x, mid.inner, dp.inner);
    sigma[h] = encode_position(R, z, mid.outer, qp_pos);
  }
  return CartTwoCell(L.poly, R.poly, FinMap(L.poly.positions(), R.poly.positions(), sigma),
                     nu_map);
}

CartTwoCell poly_associator_inverse(const Polynomial& r, const Polynomial& q, const Polynomial& p) {
  auto a = poly_associator(r, q, p);
  return CartTwoCell(a.tgt, a.src, a.sigma.inverse(), a.nu.inverse());
}

CartTwoCell poly_coherence(Coherence kind, const std::vector<Polynomial>& polys) {
  switch (kind) {
    case Coherence::associator:
      if (polys.size() != 3) throw Error("poly_coherence: associator takes three polynomials");
      return poly_associator(polys[0], polys[1], polys[2]);
    case Coherence::left_unitor:
    case Coherence::right_unitor: {
      if (polys.size() != 1) throw Error("poly_coherence: unitor takes one polynomial");
      const auto& p = polys[0];
      auto c = kind == Coherence::left_unitor ? compose_poly(Polynomial::identity(p.target()), p)
                                              : compose_poly(p, Polynomial::identity(p.source()));
      return CartTwoCell(c, p, FinMap::identity(p.positions()), FinMap::identity(p.shapes()));
    }
  }
  throw Error("poly_coherence: unknown kind");
}

Polynomial embed_arrow_poly(ArrowPoly mode, const FinMap& f) {
  auto idd = FinMap::identity(f.dom);
  auto idc = FinMap::identity(f.cod);
  switch (mode) {
    case ArrowPoly::sigma:
      return Polynomial(idd, idd, f);
    case ArrowPoly::delta:
      return Polynomial(f, idd, idd);
    case ArrowPoly::pi:
      return Polynomial(idd, f, idc);
  }
  throw Error("embed_arrow_poly: unknown mode");
}

Polynomial embed_span_poly(SpanPoly mode, const Span& s) {
  if (mode == SpanPoly::sigma_delta)
    return Polynomial(s.left, FinMap::identity(s.apex()), s.right);
  return Polynomial(s.left, s.right, FinMap::identity(s.target()));
}

CartTwoCell embed_span_2cell_sigma_delta(const SpanTwoCell& c) {
  return CartTwoCell(embed_span_poly(SpanPoly::sigma_delta, c.src),
                     embed_span_poly(SpanPoly::sigma_delta, c.tgt), c.apex_map, c.apex_map);
}

CartTwoCell embed_span_2cell_delta_tensor(const SpanTwoCell& c) {
  if (!c.apex_map.is_bijection())
    throw Error("embed_span_2cell_delta_tensor: span 2-cell is not invertible");
  return CartTwoCell(embed_span_poly(SpanPoly::delta_tensor, c.src),
                     embed_span_poly(SpanPoly::delta_tensor, c.tgt), c.apex_map,
                     FinMap::identity(c.src.target()));
}

GeneralTwoCell embed_span_2cell_delta_pi(const SpanTwoCell& c) {
  return gen2_triangle(embed_span_poly(SpanPoly::delta_pi, c.tgt),
                       embed_span_poly(SpanPoly::delta_pi, c.src), c.apex_map);
}

PolyAdjunction poly_adjunction(PolyAdjMode mode, const FinMap& f) {
  PolyAdjunction adj;
  const auto& X = f.dom;
  const auto& Y = f.cod;
  if (mode == PolyAdjMode::sigma_delta) {
    adj.left = embed_arrow_poly(ArrowPoly::sigma, f);
    adj.right = embed_arrow_poly(ArrowPoly::delta, f);
    auto rl = compose_poly(adj.right, adj.left);  // kernel pair (pi1, 1, pi2)
    auto kp = pullback(f, f);
    auto idx = FinMap::identity(X);
    auto diag = pullback_mediate(kp, idx, idx);
    adj.unit = gen2_from_cart(CartTwoCell(Polynomial::identity(X), rl, diag, diag));
    auto lr = compose_poly(adj.left, adj.right);  // (f, 1, f)
    adj.counit = gen2_from_cart(CartTwoCell(lr, Polynomial::identity(Y), f, f));
  } else {
    adj.left = embed_arrow_poly(ArrowPoly::delta, f);
    adj.right = embed_arrow_poly(ArrowPoly::pi, f);
    auto rl = compose_poly(adj.right, adj.left);  // (f, f, 1)
    adj.unit = gen2_triangle(Polynomial::identity(Y), rl, f);
    auto lr = compose_poly(adj.left, adj.right);  // (pi1, pi2, 1) on the kernel pair
    auto kp = pullback(f, f);
    auto idx = FinMap::identity(X);
    adj.counit = gen2_triangle(lr, Polynomial::identity(X), pullback_mediate(kp, idx, idx));
  }
  return adj;
}

bool poly_triangle_left(const PolyAdjunction& adj) {
  const auto& L = adj.left;
  const auto& R = adj.right;
  auto idL = gen2_identity(L);
  auto a = gen2_compose(Composition::horizontal, idL, adj.unit);
  auto b = gen2_from_cart(poly_associator_inverse(L, R, L));
  auto c = gen2_compose(Composition::horizontal, adj.counit, idL);
  auto v = gen2_compose(Composition::vertical, c, gen2_compose(Composition::vertical, b, a));
  return v == idL;
}

bool poly_triangle_right(const PolyAdjunction& adj) {
  const auto& L = adj.left;
  const auto& R = adj.right;
  auto idR = gen2_identity(R);
  auto a = gen2_compose(Composition::horizontal, adj.unit, idR);
  auto b = gen2_from_cart(poly_associator(R, L, R));
  auto c = gen2_compose(Composition::horizontal, idR, adj.counit);
  auto v = gen2_compose(Composition::vertical, c, gen2_compose(Composition::vertical, b, a));
  return v == idR;
}

}  // namespace polyspan
