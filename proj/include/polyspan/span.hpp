#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "polyspan/finset.hpp"

namespace polyspan {

// X <-left- M -right-> Y
struct Span {
  FinMap left;
  FinMap right;

  Span() = default;
  Span(FinMap l, FinMap r);

  const FinSet& apex() const { return left.dom; }
  const FinSet& source() const { return left.cod; }
  const FinSet& target() const { return right.cod; }

  static Span identity(const FinSet& x);

  bool operator==(const Span& o) const { return left == o.left && right == o.right; }
};

enum class CellMode { plain, iso };
enum class Composition { vertical, horizontal };

struct SpanTwoCell {
  Span src;
  Span tgt;
  FinMap apex_map;

  SpanTwoCell() = default;
  SpanTwoCell(Span s, Span t, FinMap m, CellMode mode = CellMode::plain);

  bool operator==(const SpanTwoCell& o) const {
    return src == o.src && tgt == o.tgt && apex_map == o.apex_map;
  }
};

struct SpanComposite {
  Span span;
  PullbackResult pb;  // of first.right against second.left
};

SpanComposite compose_span_witness(const Span& second, const Span& first);
Span compose_span(const Span& second, const Span& first);

SpanTwoCell span_identity_2cell(const Span& s);

// vertical: beta after alpha. horizontal: beta on the second factor, alpha on
// the first, giving beta.src o alpha.src => beta.tgt o alpha.tgt.
SpanTwoCell span_2cell_compose(Composition mode, const SpanTwoCell& beta,
                               const SpanTwoCell& alpha);

enum class Coherence { associator, left_unitor, right_unitor };

// associator: (r o q) o p => r o (q o p) for spans {r, q, p}.
// left_unitor: id o s => s, right_unitor: s o id => s for spans {s}.
SpanTwoCell span_coherence(Coherence kind, const std::vector<Span>& spans);
SpanTwoCell span_associator(const Span& r, const Span& q, const Span& p);
SpanTwoCell span_associator_inverse(const Span& r, const Span& q, const Span& p);

enum class ArrowEmbedding { sigma, delta };

// sigma: f |-> (1, f); delta: f |-> (f, 1).
Span embed_arrow_span(ArrowEmbedding mode, const FinMap& f);

struct SpanAdjunction {
  Span left;
  Span right;
  SpanTwoCell unit;    // id => right o left
  SpanTwoCell counit;  // left o right => id
};

SpanAdjunction span_adjunction(const FinMap& f);

// Triangle identities as exact 2-cell equalities.
bool span_triangle_left(const SpanAdjunction& adj);
bool span_triangle_right(const SpanAdjunction& adj);

using Matrix = std::vector<std::vector<std::uint64_t>>;

// entry[j][i] counts apex elements over source i and target j.
Matrix to_matrix(const Span& s);
Matrix matrix_product(const Matrix& a, const Matrix& b, std::size_t inner, std::size_t cols);

// A bijection of apexes commuting with both legs, when one exists.
std::optional<SpanTwoCell> span_isomorphism(const Span& a, const Span& b);

}  // namespace polyspan
