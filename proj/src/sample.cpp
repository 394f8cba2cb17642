#include "polyspan/sample.hpp"

#include <map>
#include <numeric>

namespace polyspan {

FinSet random_set(Rng& rng, std::size_t lo, std::size_t hi) { return FinSet(rng.between(lo, hi)); }

FinMap random_map(Rng& rng, const FinSet& dom, const FinSet& cod) {
  if (cod.size == 0 && dom.size > 0) throw Error("random_map: no maps into the empty set");
  std::vector<std::size_t> t(dom.size);
  for (auto& v : t) v = rng.below(cod.size);
  return FinMap(dom, cod, std::move(t));
}

FinMap random_permutation(Rng& rng, const FinSet& x) {
  std::vector<std::size_t> t(x.size);
  std::iota(t.begin(), t.end(), std::size_t{0});
  for (std::size_t i = t.size(); i > 1; --i) std::swap(t[i - 1], t[rng.below(i)]);
  return FinMap(x, x, std::move(t));
}

FinMap random_map_from(Rng& rng, const FinSet& dom, std::size_t cod_lo, std::size_t cod_hi) {
  std::size_t lo = dom.size > 0 ? std::max<std::size_t>(cod_lo, 1) : cod_lo;
  FinSet cod(rng.between(lo, std::max(lo, cod_hi)));
  return random_map(rng, dom, cod);
}

FinMap random_map_into(Rng& rng, const FinSet& cod, std::size_t dom_lo, std::size_t dom_hi) {
  FinSet dom(cod.size == 0 ? 0 : rng.between(dom_lo, dom_hi));
  return random_map(rng, dom, cod);
}

Span random_span(Rng& rng, const FinSet& x, const FinSet& y, std::size_t apex_hi) {
  FinSet m(x.size == 0 || y.size == 0 ? 0 : rng.between(0, apex_hi));
  return Span(random_map(rng, m, x), random_map(rng, m, y));
}

SpanTwoCell random_span_2cell_into(Rng& rng, const Span& tgt, std::size_t apex_hi, bool iso) {
  FinMap m = iso ? random_permutation(rng, tgt.apex())
                 : random_map(rng, FinSet(tgt.apex().size == 0 ? 0 : rng.between(0, apex_hi)),
                              tgt.apex());
  Span src(compose_map(tgt.left, m), compose_map(tgt.right, m));
  return SpanTwoCell(src, tgt, m, iso ? CellMode::iso : CellMode::plain);
}

Polynomial random_poly(Rng& rng, const FinSet& i, const FinSet& j, std::size_t shapes_hi,
                       std::size_t fiber_hi) {
  FinSet b(j.size == 0 ? 0 : rng.between(0, shapes_hi));
  auto t = random_map(rng, b, j);
  std::vector<std::size_t> pt;
  for (std::size_t x = 0; x < b.size; ++x) {
    std::size_t n = i.size == 0 ? 0 : rng.between(0, fiber_hi);
    pt.insert(pt.end(), n, x);
  }
  FinSet e(pt.size());
  return Polynomial(random_map(rng, e, i), FinMap(e, b, pt), t);
}

CartTwoCell random_cart_into(Rng& rng, const Polynomial& tgt, std::size_t shapes_hi) {
  FinSet b(tgt.shapes().size == 0 ? 0 : rng.between(0, shapes_hi));
  auto nu = random_map(rng, b, tgt.shapes());
  auto pb = pullback(nu, tgt.p);
  auto perm = random_permutation(rng, pb.apex);
  FinMap sigma = compose_map(pb.proj2, perm);
  FinMap p = compose_map(pb.proj1, perm);
  Polynomial src(compose_map(tgt.s, sigma), p, compose_map(tgt.t, nu));
  return CartTwoCell(src, tgt, sigma, nu);
}

GeneralTwoCell random_general_into(Rng& rng, const Polynomial& tgt, std::size_t shapes_hi,
                                   std::size_t extra_hi) {
  FinSet b(tgt.shapes().size == 0 ? 0 : rng.between(0, shapes_hi));
  auto g = random_map(rng, b, tgt.shapes());
  auto pb = pullback(g, tgt.p);
  // Elements of S with the same shape and the same label may share a position.
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> cls;
  std::vector<std::size_t> et(pb.apex.size);
  std::vector<std::size_t> es, ep;
  for (std::size_t x = 0; x < pb.apex.size; ++x) {
    std::pair<std::size_t, std::size_t> key{pb.proj1(x), tgt.s(pb.proj2(x))};
    auto& seen = cls[key];
    if (!seen.empty() && rng.coin()) {
      et[x] = seen[rng.below(seen.size())];
    } else {
      et[x] = es.size();
      seen.push_back(es.size());
      es.push_back(key.second);
      ep.push_back(key.first);
    }
  }
  if (b.size > 0 && tgt.source().size > 0) {
    std::size_t extra = rng.between(0, extra_hi);
    for (std::size_t k = 0; k < extra; ++k) {
      ep.push_back(rng.below(b.size));
      es.push_back(rng.below(tgt.source().size));
    }
  }
  // Shuffle positions so E is not ordered by first use.
  FinSet e(es.size());
  auto perm = random_permutation(rng, e);
  std::vector<std::size_t> s2(e.size), p2(e.size);
  for (std::size_t k = 0; k < e.size; ++k) {
    s2[perm(k)] = es[k];
    p2[perm(k)] = ep[k];
  }
  for (auto& v : et) v = perm(v);
  Polynomial src(FinMap(e, tgt.source(), s2), FinMap(e, b, p2), compose_map(tgt.t, g));
  return GeneralTwoCell(src, tgt, FinMap(pb.apex, e, et), pb.proj2, g);
}

GeneralTwoCell reparameterize(Rng& rng, const GeneralTwoCell& a) {
  auto perm = random_permutation(rng, a.apex());
  return GeneralTwoCell(a.src, a.tgt, compose_map(a.e, perm), compose_map(a.f, perm), a.g);
}

}  // namespace polyspan
