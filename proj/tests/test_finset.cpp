#include <map>

#include "doctest.h"
#include "polyspan/finset.hpp"
#include "polyspan/sample.hpp"

using namespace polyspan;

namespace {

FinMap map_of(std::size_t dom, std::size_t cod, std::vector<std::size_t> t) {
  return FinMap(FinSet(dom), FinSet(cod), std::move(t));
}

// Every map A -> B restricted to a fiber, counted by brute force.
std::size_t brute_section_count(const FinMap& f, const FinMap& u, std::size_t b) {
  std::vector<std::size_t> as;
  for (std::size_t a = 0; a < f.dom.size; ++a)
    if (f(a) == b) as.push_back(a);
  std::size_t count = 0;
  for (const auto& s : enumerate_maps(FinSet(as.size()), u.dom)) {
    bool ok = true;
    for (std::size_t k = 0; k < as.size(); ++k) ok = ok && u(s(k)) == as[k];
    count += ok;
  }
  return count;
}

std::vector<FinMap> all_maps_upto(std::size_t n, const FinSet& cod) {
  std::vector<FinMap> out;
  for (std::size_t d = 0; d <= n; ++d)
    for (auto& m : enumerate_maps(FinSet(d), cod)) out.push_back(m);
  return out;
}

}  // namespace

TEST_CASE("FinMap validates its table") {
  CHECK_THROWS_AS(map_of(2, 2, {0, 2}), Error);
  CHECK_THROWS_AS(map_of(2, 2, {0}), Error);
  CHECK_THROWS_AS(FinSet(2, {"a", "a"}), Error);
  CHECK(FinSet(2, {"a", "b"}) == FinSet(2));
}

TEST_CASE("compose_map") {
  auto f = map_of(2, 1, {0, 0});
  auto g = map_of(1, 3, {2});
  CHECK(compose_map(g, f) == map_of(2, 3, {2, 2}));
  CHECK(compose_map(FinMap::identity(FinSet(1)), f) == f);
  CHECK_THROWS_AS(compose_map(f, f), Error);

  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    auto a = random_set(rng, 0, 5);
    auto b = random_set(rng, a.size ? 1 : 0, 5);
    auto c = random_set(rng, b.size ? 1 : 0, 5);
    auto ff = random_map(rng, a, b);
    auto gg = random_map(rng, b, c);
    auto h = compose_map(gg, ff);
    for (std::size_t x = 0; x < a.size; ++x) CHECK(h(x) == gg(ff(x)));
  }
}

TEST_CASE("fiber") {
  auto id = FinMap::identity(FinSet(3));
  for (std::size_t b = 0; b < 3; ++b) CHECK(fiber(id, b).set.size == 1);
  CHECK(fiber(FinMap::constant(FinSet(4), FinSet(1), 0), 0).set.size == 4);
  CHECK_THROWS_AS(fiber(id, 3), Error);
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    auto f = random_map_from(rng, random_set(rng, 0, 6), 1, 4);
    std::size_t total = 0;
    for (std::size_t b = 0; b < f.cod.size; ++b) {
      auto fb = fiber(f, b);
      total += fb.set.size;
      for (std::size_t k = 0; k < fb.set.size; ++k) CHECK(f(fb.inclusion(k)) == b);
    }
    CHECK(total == f.dom.size);
  }
}

TEST_CASE("pullback basics and identity normalization") {
  auto f = map_of(2, 2, {0, 1});
  auto g = map_of(1, 2, {0});
  auto pb = pullback(f, g);
  CHECK(pb.apex.size == 1);
  CHECK(pb.pairs[0] == std::make_pair(std::size_t{0}, std::size_t{0}));
  CHECK_THROWS_AS(pullback(f, map_of(1, 3, {0})), Error);

  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    auto gg = random_map_into(rng, random_set(rng, 1, 4), 0, 5);
    auto idc = FinMap::identity(gg.cod);
    auto l = pullback(idc, gg);
    CHECK(l.apex == gg.dom);
    CHECK(l.proj2.is_identity());
    CHECK(l.proj1 == gg);
    auto r = pullback(gg, idc);
    CHECK(r.proj1.is_identity());
    CHECK(r.proj2 == gg);
  }
}

TEST_CASE("pullback cardinality and lexicographic order on random cospans") {
  Rng rng(17);
  for (int i = 0; i < 100; ++i) {
    auto b = random_set(rng, 1, 6);
    auto f = random_map_into(rng, b, 0, 6);
    auto g = random_map_into(rng, b, 0, 6);
    auto pb = pullback(f, g);
    std::size_t expect = 0;
    for (std::size_t y = 0; y < b.size; ++y) expect += fiber(f, y).set.size * fiber(g, y).set.size;
    CHECK(pb.apex.size == expect);
    CHECK(compose_map(f, pb.proj1) == compose_map(g, pb.proj2));
    CHECK(std::is_sorted(pb.pairs.begin(), pb.pairs.end()));
  }
}

TEST_CASE("pullback mediator exists and is unique, exhaustively at size <= 3") {
  for (std::size_t bs = 1; bs <= 2; ++bs) {
    FinSet b(bs);
    for (auto& f : all_maps_upto(2, b))
      for (auto& g : all_maps_upto(2, b)) {
        auto pb = pullback(f, g);
        CHECK(pullback_mediate(pb, pb.proj1, pb.proj2).is_identity());
        for (std::size_t ws = 0; ws <= 2; ++ws) {
          FinSet w(ws);
          for (auto& u : enumerate_maps(w, f.dom))
            for (auto& v : enumerate_maps(w, g.dom)) {
              bool commutes = compose_map(f, u) == compose_map(g, v);
              std::size_t solutions = 0;
              for (auto& h : enumerate_maps(w, pb.apex))
                solutions += compose_map(pb.proj1, h) == u && compose_map(pb.proj2, h) == v;
              CHECK(solutions == (commutes ? 1u : 0u));
              if (commutes) {
                auto h = pullback_mediate(pb, u, v);
                CHECK(compose_map(pb.proj1, h) == u);
                CHECK(compose_map(pb.proj2, h) == v);
              } else {
                CHECK_THROWS_AS(pullback_mediate(pb, u, v), Error);
              }
            }
        }
      }
  }
}

TEST_CASE("is_pullback_square") {
  auto f = map_of(2, 1, {0, 0});
  auto pb = pullback(f, f);
  CHECK(is_pullback_square(pb.proj2, pb.proj1, f, f));
  // The diagonal commutes but is not a pullback of f against itself.
  auto id = FinMap::identity(FinSet(2));
  CHECK_FALSE(is_pullback_square(id, id, f, f));
}

TEST_CASE("dist_pullback small cases") {
  SUBCASE("f constant with fibers of size 2 and 1") {
    auto u = map_of(3, 2, {0, 0, 1});
    auto f = map_of(2, 1, {0, 0});
    auto d = dist_pullback(f, u);
    CHECK(d.Y.size == 2);
    CHECK(d.T.size == 4);
  }
  SUBCASE("f identity") {
    auto u = map_of(3, 2, {1, 0, 1});
    auto d = dist_pullback(FinMap::identity(FinSet(2)), u);
    CHECK(d.Y == u.dom);
    CHECK(d.r == u);
    CHECK(d.p.is_identity());
    CHECK(d.q.is_identity());
  }
  SUBCASE("u identity") {
    auto f = map_of(3, 2, {1, 1, 0});
    auto d = dist_pullback(f, FinMap::identity(FinSet(3)));
    CHECK(d.r.is_identity());
    CHECK(d.T == f.dom);
    CHECK(d.p.is_identity());
    CHECK(d.q == f);
  }
  SUBCASE("empty fibers") {
    // b = 1 has an empty f-fiber, so it carries exactly one empty section.
    auto f = map_of(1, 2, {0});
    auto u = map_of(0, 1, {});
    auto d = dist_pullback(f, u);
    CHECK(d.Y.size == 1);
    CHECK(d.r(0) == 1);
    CHECK(d.T.size == 0);
  }
  CHECK_THROWS_AS(dist_pullback(map_of(1, 1, {0}), map_of(1, 2, {1})), Error);
}

TEST_CASE("dist_pullback cardinality on random inputs") {
  Rng rng(23);
  for (int i = 0; i < 200; ++i) {
    auto f = random_map_from(rng, random_set(rng, 0, 4), 1, 3);
    auto u = random_map_into(rng, f.dom, 0, 5);
    auto d = dist_pullback(f, u);
    std::size_t expect = 0;
    for (std::size_t b = 0; b < f.cod.size; ++b) expect += brute_section_count(f, u, b);
    CHECK(d.Y.size == expect);
    CHECK(is_pullback_square(d.q, compose_map(u, d.p), d.r, f));
    auto chosen = pullback(f, d.r);
    CHECK(d.tpb.pairs == chosen.pairs);
    for (std::size_t y = 0; y < d.Y.size; ++y)
      CHECK(d.section_index(d.r(y), d.sections[y]) == y);
  }
}

TEST_CASE("dpb terminality, exhaustive at sizes <= 3") {
  // Every pullback around (f, u) is, up to isomorphism, the pullback of the
  // chosen dpb along some t0: Y' -> Y. We enumerate those and, for each,
  // count all (s, t) by brute force.
  std::size_t checked = 0;
  for (std::size_t bs = 1; bs <= 2; ++bs)
    for (auto& f : all_maps_upto(3, FinSet(bs)))
      for (auto& u : all_maps_upto(3, f.dom)) {
        auto d = dist_pullback(f, u);
        auto self = dpb_factor(d, {d.p, d.q, d.r});
        CHECK(self.s.is_identity());
        CHECK(self.t.is_identity());
        for (std::size_t ys = 0; ys <= 2; ++ys)
          for (auto& t0 : enumerate_maps(FinSet(ys), d.Y)) {
            FinMap r2 = compose_map(d.r, t0);
            auto outer = pullback(f, r2);
            std::vector<std::size_t> st(outer.apex.size), pt(outer.apex.size);
            for (std::size_t i = 0; i < outer.apex.size; ++i) {
              auto [a, y2] = outer.pairs[i];
              st[i] = d.tpb.at(a, t0(y2));
              pt[i] = d.p(st[i]);
            }
            FinMap pc(outer.apex, u.dom, pt);
            PullbackAround cand{pc, outer.proj2, r2};
            auto m = dpb_factor(d, cand);
            CHECK(m.t == t0);
            CHECK(m.s == FinMap(outer.apex, d.T, st));
            std::size_t solutions = 0;
            for (auto& t : enumerate_maps(FinSet(ys), d.Y)) {
              if (compose_map(d.r, t) != r2) continue;
              for (auto& s : enumerate_maps(outer.apex, d.T))
                solutions += compose_map(d.p, s) == pc && compose_map(d.q, s) == compose_map(t, outer.proj2);
            }
            CHECK(solutions == 1);
            ++checked;
          }
      }
  CHECK(checked > 100);
}

TEST_CASE("dpb_factor rejects a candidate that is not a pullback") {
  auto f = map_of(2, 1, {0, 0});
  auto u = FinMap::identity(FinSet(2));
  auto d = dist_pullback(f, u);
  // One point over B with T' = {a1}: not a pullback of f.
  PullbackAround bad{map_of(1, 2, {0}), map_of(1, 1, {0}), map_of(1, 1, {0})};
  CHECK_THROWS_AS(dpb_factor(d, bad), Error);
}

TEST_CASE("dpb_factor on an isomorphic copy returns the isomorphism") {
  Rng rng(29);
  for (int i = 0; i < 50; ++i) {
    auto f = random_map_from(rng, random_set(rng, 1, 3), 1, 2);
    auto u = random_map_into(rng, f.dom, 1, 3);
    auto d = dist_pullback(f, u);
    auto sigma = random_permutation(rng, d.T);
    auto tau = random_permutation(rng, d.Y);
    // Candidate with T', Y' relabelled: p' = p sigma, q' = tau^-1 q sigma, r' = r tau.
    PullbackAround cand{compose_map(d.p, sigma),
                        compose_map(tau.inverse(), compose_map(d.q, sigma)),
                        compose_map(d.r, tau)};
    auto m = dpb_factor(d, cand);
    CHECK(m.s == sigma);
    CHECK(m.t == tau);
  }
}

TEST_CASE("enumerate_maps and permutations count") {
  CHECK(enumerate_maps(FinSet(3), FinSet(2)).size() == 8);
  CHECK(enumerate_maps(FinSet(0), FinSet(2)).size() == 1);
  CHECK(enumerate_maps(FinSet(2), FinSet(0)).empty());
  CHECK(enumerate_maps(FinSet(0), FinSet(0)).size() == 1);
  CHECK(enumerate_permutations(FinSet(3)).size() == 6);
}
