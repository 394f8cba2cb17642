#pragma once

#include <cstdint>
#include <random>

#include "polyspan/finset.hpp"
#include "polyspan/poly.hpp"
#include "polyspan/span.hpp"

namespace polyspan {

// Deterministic across platforms: mt19937_64 is fully specified, and we do
// our own range reduction instead of relying on std distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }
  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(eng_() % n); }
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
  bool coin() { return (eng_() & 1u) != 0; }

  Rng fork(std::uint64_t salt) { return Rng(eng_() ^ (salt * 0x9e3779b97f4a7c15ULL)); }

 private:
  std::mt19937_64 eng_;
};

FinSet random_set(Rng& rng, std::size_t lo, std::size_t hi);

// Uniform map. An empty codomain forces an empty domain, so callers must pass
// a domain of size 0 in that case.
FinMap random_map(Rng& rng, const FinSet& dom, const FinSet& cod);
FinMap random_permutation(Rng& rng, const FinSet& x);

// A map onto a codomain of random size with dom of the given size.
FinMap random_map_from(Rng& rng, const FinSet& dom, std::size_t cod_lo, std::size_t cod_hi);
FinMap random_map_into(Rng& rng, const FinSet& cod, std::size_t dom_lo, std::size_t dom_hi);

// Span X <- M -> Y with |M| in [0, apex_hi].
Span random_span(Rng& rng, const FinSet& x, const FinSet& y, std::size_t apex_hi);

// A 2-cell into `tgt`: the source apex is a random multiset of target apex
// elements, optionally forced to be a bijection.
SpanTwoCell random_span_2cell_into(Rng& rng, const Span& tgt, std::size_t apex_hi, bool iso);

// Polynomial I <- E -> B -> J with |B| <= shapes_hi and fibers of p of size
// at most fiber_hi.
Polynomial random_poly(Rng& rng, const FinSet& i, const FinSet& j, std::size_t shapes_hi,
                       std::size_t fiber_hi);

// Cartesian cell into `tgt` whose source has at most shapes_hi shapes. The
// source positions are a shuffled copy of the chosen pullback.
CartTwoCell random_cart_into(Rng& rng, const Polynomial& tgt, std::size_t shapes_hi);

// General cell into `tgt`; positions of the source are obtained from the
// pullback by merging compatible elements and adding unused ones.
GeneralTwoCell random_general_into(Rng& rng, const Polynomial& tgt, std::size_t shapes_hi,
                                   std::size_t extra_hi);

// An equivalent, non-normalized representative of the same cell.
GeneralTwoCell reparameterize(Rng& rng, const GeneralTwoCell& a);

}  // namespace polyspan
