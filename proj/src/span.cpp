#include "polyspan/span.hpp"

#include <map>

namespace polyspan {

Span::Span(FinMap l, FinMap r) : left(std::move(l)), right(std::move(r)) {
  if (!(left.dom == right.dom)) throw Error("Span: legs do not share an apex");
}

Span Span::identity(const FinSet& x) { return Span(FinMap::identity(x), FinMap::identity(x)); }

SpanTwoCell::SpanTwoCell(Span s, Span t, FinMap m, CellMode mode)
    : src(std::move(s)), tgt(std::move(t)), apex_map(std::move(m)) {
  if (!(apex_map.dom == src.apex()) || !(apex_map.cod == tgt.apex()))
    throw Error("SpanTwoCell: apex map has the wrong boundary");
  if (!(src.source() == tgt.source()) || !(src.target() == tgt.target()))
    throw Error("SpanTwoCell: spans are not parallel");
  if (compose_map(tgt.left, apex_map) != src.left || compose_map(tgt.right, apex_map) != src.right)
    throw Error("SpanTwoCell: apex map does not commute with the legs");
  if (mode == CellMode::iso && !apex_map.is_bijection())
    throw Error("SpanTwoCell: apex map is not invertible");
}

SpanComposite compose_span_witness(const Span& second, const Span& first) {
  if (!(first.target() == second.source()))
    throw Error("compose_span: target of the first span differs from source of the second");
  auto pb = pullback(first.right, second.left);
  Span s(compose_map(first.left, pb.proj1), compose_map(second.right, pb.proj2));
  return SpanComposite{std::move(s), std::move(pb)};
}

Span compose_span(const Span& second, const Span& first) {
  return compose_span_witness(second, first).span;
}

SpanTwoCell span_identity_2cell(const Span& s) {
  return SpanTwoCell(s, s, FinMap::identity(s.apex()));
}

SpanTwoCell span_2cell_compose(Composition mode, const SpanTwoCell& beta,
                               const SpanTwoCell& alpha) {
  if (mode == Composition::vertical) {
    if (!(alpha.tgt == beta.src)) throw Error("span_2cell_compose: vertical boundary mismatch");
    return SpanTwoCell(alpha.src, beta.tgt, compose_map(beta.apex_map, alpha.apex_map));
  }
  auto s = compose_span_witness(beta.src, alpha.src);
  auto t = compose_span_witness(beta.tgt, alpha.tgt);
  FinMap m = pullback_mediate(t.pb, compose_map(alpha.apex_map, s.pb.proj1),
                              compose_map(beta.apex_map, s.pb.proj2));
  return SpanTwoCell(s.span, t.span, m);
}

SpanTwoCell span_associator(const Span& r, const Span& q, const Span& p) {
  auto rq = compose_span_witness(r, q);
  auto lhs = compose_span_witness(rq.span, p);
  auto qp = compose_span_witness(q, p);
  auto rhs = compose_span_witness(r, qp.span);
  std::vector<std::size_t> t(lhs.span.apex().size);
  for (std::size_t i = 0; i < t.size(); ++i) {
    auto [pe, rqe] = lhs.pb.pairs[i];
    auto [qe, re] = rq.pb.pairs[rqe];
    t[i] = rhs.pb.at(qp.pb.at(pe, qe), re);
  }
  return SpanTwoCell(lhs.span, rhs.span, FinMap(lhs.span.apex(), rhs.span.apex(), std::move(t)),
                     CellMode::iso);
}

SpanTwoCell span_associator_inverse(const Span& r, const Span& q, const Span& p) {
  auto a = span_associator(r, q, p);
  return SpanTwoCell(a.tgt, a.src, a.apex_map.inverse(), CellMode::iso);
}

SpanTwoCell span_coherence(Coherence kind, const std::vector<Span>& spans) {
  switch (kind) {
    case Coherence::associator:
      if (spans.size() != 3) throw Error("span_coherence: associator takes three spans");
      return span_associator(spans[0], spans[1], spans[2]);
    case Coherence::left_unitor: {
      if (spans.size() != 1) throw Error("span_coherence: unitor takes one span");
      const auto& s = spans[0];
      auto c = compose_span(Span::identity(s.target()), s);
      return SpanTwoCell(c, s, FinMap::identity(s.apex()), CellMode::iso);
    }
    case Coherence::right_unitor: {
      if (spans.size() != 1) throw Error("span_coherence: unitor takes one span");
      const auto& s = spans[0];
      auto c = compose_span(s, Span::identity(s.source()));
      return SpanTwoCell(c, s, FinMap::identity(s.apex()), CellMode::iso);
    }
  }
  throw Error("span_coherence: unknown kind");
}

Span embed_arrow_span(ArrowEmbedding mode, const FinMap& f) {
  if (mode == ArrowEmbedding::sigma) return Span(FinMap::identity(f.dom), f);
  return Span(f, FinMap::identity(f.dom));
}

SpanAdjunction span_adjunction(const FinMap& f) {
  SpanAdjunction adj;
  adj.left = embed_arrow_span(ArrowEmbedding::sigma, f);
  adj.right = embed_arrow_span(ArrowEmbedding::delta, f);
  auto rl = compose_span_witness(adj.right, adj.left);
  FinMap id = FinMap::identity(f.dom);
  adj.unit = SpanTwoCell(Span::identity(f.dom), rl.span, pullback_mediate(rl.pb, id, id));
  auto lr = compose_span(adj.left, adj.right);
  adj.counit = SpanTwoCell(lr, Span::identity(f.cod), f);
  return adj;
}

bool span_triangle_left(const SpanAdjunction& adj) {
  // (counit * L) . assoc^-1 . (L * unit) = id_L
  const auto& L = adj.left;
  const auto& R = adj.right;
  auto idL = span_identity_2cell(L);
  auto a = span_2cell_compose(Composition::horizontal, idL, adj.unit);
  auto b = span_associator_inverse(L, R, L);
  auto c = span_2cell_compose(Composition::horizontal, adj.counit, idL);
  auto v = span_2cell_compose(Composition::vertical, c,
                              span_2cell_compose(Composition::vertical, b, a));
  return v == idL;
}

bool span_triangle_right(const SpanAdjunction& adj) {
  // (R * counit) . assoc . (unit * R) = id_R
  const auto& L = adj.left;
  const auto& R = adj.right;
  auto idR = span_identity_2cell(R);
  auto a = span_2cell_compose(Composition::horizontal, adj.unit, idR);
  auto b = span_associator(R, L, R);
  auto c = span_2cell_compose(Composition::horizontal, idR, adj.counit);
  auto v = span_2cell_compose(Composition::vertical, c,
                              span_2cell_compose(Composition::vertical, b, a));
  return v == idR;
}

Matrix to_matrix(const Span& s) {
  Matrix m(s.target().size, std::vector<std::uint64_t>(s.source().size, 0));
  for (std::size_t x = 0; x < s.apex().size; ++x) ++m[s.right.table[x]][s.left.table[x]];
  return m;
}

Matrix matrix_product(const Matrix& a, const Matrix& b, std::size_t inner, std::size_t cols) {
  Matrix out(a.size(), std::vector<std::uint64_t>(cols, 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k)
      for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

std::optional<SpanTwoCell> span_isomorphism(const Span& a, const Span& b) {
  if (!(a.source() == b.source()) || !(a.target() == b.target()) || !(a.apex() == b.apex()))
    return std::nullopt;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> slots;
  for (std::size_t y = 0; y < b.apex().size; ++y)
    slots[{b.left.table[y], b.right.table[y]}].push_back(y);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> used;
  std::vector<std::size_t> t(a.apex().size);
  for (std::size_t x = 0; x < a.apex().size; ++x) {
    std::pair<std::size_t, std::size_t> key{a.left.table[x], a.right.table[x]};
    auto it = slots.find(key);
    std::size_t& k = used[key];
    if (it == slots.end() || k >= it->second.size()) return std::nullopt;
    t[x] = it->second[k++];
  }
  return SpanTwoCell(a, b, FinMap(a.apex(), b.apex(), std::move(t)), CellMode::iso);
}

}  // namespace polyspan
