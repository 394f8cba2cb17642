#include <doctest.h>

#include "polyspan/reconstruct.hpp"
#include "polyspan/sample.hpp"

using namespace polyspan;

namespace {

CheckConfig small_config(std::uint64_t seed, std::size_t samples) {
  CheckConfig c;
  c.max_size = 3;
  c.samples = samples;
  c.seed = seed;
  c.families.samples = 10;
  return c;
}

std::string describe_failure(const Report& r) {
  auto f = r.first_failure();
  if (!f) return "none";
  return to_json(*f).dump();
}

SampleBudget budget() {
  SampleBudget b;
  b.samples = 15;
  return b;
}

}  // namespace

TEST_CASE("span local functor agrees with direct evaluation") {
  auto F = family_instance();
  auto L = build_span_oplax(F);
  Rng rng(31);
  for (int i = 0; i < 40; ++i) {
    auto s = random_span(rng, random_set(rng, 1, 3), random_set(rng, 1, 3), 3);
    auto c = random_span_2cell_into(rng, s, 3, false);
    CHECK(L.one(c.src) == eval_span_as_functor(c.src));
    auto v = nat_equal(L.two(c), eval_span_two_cell(c), budget());
    CHECK_MESSAGE(v.ok, (v.witness ? v.witness->detail : std::string()));
  }
  auto f = FinMap(FinSet(3), FinSet(2), {0, 1, 1});
  CHECK(L.one(embed_arrow_span(ArrowEmbedding::sigma, f)) == F.sigma(f));
  CHECK(L.one(embed_arrow_span(ArrowEmbedding::delta, f)) == F.delta(f));
}

TEST_CASE("cartesian and general local functors agree with direct evaluation") {
  auto F = family_instance();
  auto Lc = build_polyc_oplax(extract_beck_data(F));
  auto L = build_poly_oplax(F);
  Rng rng(37);
  for (int i = 0; i < 30; ++i) {
    auto P = random_poly(rng, random_set(rng, 1, 2), random_set(rng, 1, 2), 2, 2);
    CHECK(L.one(P) == eval_poly_as_functor(P));
    auto c = random_cart_into(rng, P, 2);
    CHECK(nat_equal(Lc.two(c), eval_two_cell(c), budget()).ok);
    // Restricted to cartesian cells the general construction is the cartesian one.
    CHECK(nat_equal(L.two(gen2_from_cart(c)), Lc.two(c), budget()).ok);

    auto g = random_general_into(rng, P, 2, 1);
    CHECK(nat_equal(L.two(g), eval_two_cell(g), budget()).ok);
    // Independent of the chosen representative.
    CHECK(nat_equal(L.two(reparameterize(rng, g)), L.two(g), budget()).ok);
  }
}

TEST_CASE("binary constraints agree with their Beck-cell descriptions") {
  auto F = family_instance();
  auto L = build_span_oplax(F);
  auto T = extract_beck_data(F);
  auto Lc = build_polyc_oplax(T);
  Rng rng(41);
  for (int i = 0; i < 25; ++i) {
    auto X = random_set(rng, 1, 3), Y = random_set(rng, 1, 3), Z = random_set(rng, 1, 3);
    auto p = random_span(rng, X, Y, 3);
    auto q = random_span(rng, Y, Z, 3);
    CHECK(nat_equal(L.phi(q, p), span_beck_constraint(F, q, p), budget()).ok);

    auto P = random_poly(rng, FinSet(X.size % 2 + 1), FinSet(2), 2, 2);
    auto Q = random_poly(rng, FinSet(2), FinSet(Z.size % 2 + 1), 2, 2);
    auto v = nat_equal(Lc.phi(Q, P), polyc_beck_dist_constraint(T, Q, P), budget());
    CHECK_MESSAGE(v.ok, (v.witness ? v.witness->detail : std::string()));
    // The family constraint is the evaluation comparison.
    CHECK(nat_equal(Lc.phi(Q, P), poly_comparison(Q, P), budget()).ok);
  }
}

TEST_CASE("oplax laws for every construction") {
  auto cfg = small_config(43, 10);
  auto F = family_instance();
  auto S = sub_instance();
  for (const auto& I : {F, S}) {
    auto rep = check_oplax_laws(build_span_oplax(I), cfg);
    CHECK_MESSAGE(rep.ok(), I.name << ": " << describe_failure(rep));
    CHECK(rep.size() == 60);
    auto repc = check_oplax_laws(build_polyc_oplax(extract_beck_data(I)), cfg);
    CHECK_MESSAGE(repc.ok(), I.name << ": " << describe_failure(repc));
    auto repg = check_oplax_laws(build_poly_oplax(I), cfg);
    CHECK_MESSAGE(repg.ok(), I.name << ": " << describe_failure(repg));
  }
  for (auto t : {Tensor::product, Tensor::coproduct}) {
    auto T = monoidal_triple(t);
    auto rep = check_oplax_laws(build_spaniso_oplax(T.pair()), cfg);
    CHECK_MESSAGE(rep.ok(), T.name << ": " << describe_failure(rep));
    auto repc = check_oplax_laws(build_polyc_oplax(T), cfg);
    CHECK_MESSAGE(repc.ok(), T.name << ": " << describe_failure(repc));
  }
}

TEST_CASE("gregariousness in both formulations") {
  auto cfg = small_config(47, 10);
  for (const auto& I : {family_instance(), sub_instance()}) {
    for (auto m : {GregariousMode::constraint, GregariousMode::adjunction}) {
      auto r1 = check_gregarious(build_span_oplax(I), m, cfg);
      CHECK_MESSAGE(r1.ok(), I.name << ": " << describe_failure(r1));
      auto r2 = check_gregarious(build_polyc_oplax(extract_beck_data(I)), m, cfg);
      CHECK_MESSAGE(r2.ok(), I.name << ": " << describe_failure(r2));
      auto r3 = check_gregarious(build_poly_oplax(I), m, cfg);
      CHECK_MESSAGE(r3.ok(), I.name << ": " << describe_failure(r3));
    }
  }
  for (auto t : {Tensor::product, Tensor::coproduct}) {
    auto T = monoidal_triple(t);
    for (auto m : {GregariousMode::constraint, GregariousMode::adjunction}) {
      auto r = check_gregarious(build_spaniso_oplax(T.pair()), m, cfg);
      CHECK_MESSAGE(r.ok(), T.name << ": " << describe_failure(r));
      auto rc = check_gregarious(build_polyc_oplax(T), m, cfg);
      CHECK_MESSAGE(rc.ok(), T.name << ": " << describe_failure(rc));
    }
  }
}

TEST_CASE("pseudofunctoriality: families and Sub yes, coproduct tensor no") {
  auto cfg = small_config(53, 15);
  for (const auto& I : {family_instance(), sub_instance()}) {
    auto r = check_pseudo(build_span_oplax(I), cfg);
    CHECK_MESSAGE(r.ok(), describe_failure(r));
    auto rc = check_pseudo(build_polyc_oplax(extract_beck_data(I)), cfg);
    CHECK_MESSAGE(rc.ok(), describe_failure(rc));
  }
  auto prod = check_pseudo(build_polyc_oplax(monoidal_triple(Tensor::product)), cfg);
  CHECK_MESSAGE(prod.ok(), describe_failure(prod));

  // (1,f,1) after (1,1,u) with u: 4 -> 2 two-to-one and f: 2 -> 1 needs the
  // distributivity pullback around (f, u), where the coproduct tensor fails.
  auto L = build_polyc_oplax(monoidal_triple(Tensor::coproduct));
  FinMap u(FinSet(4), FinSet(2), {0, 0, 1, 1});
  FinMap f(FinSet(2), FinSet(1), {0, 0});
  auto P = embed_arrow_poly(ArrowPoly::sigma, u);
  auto Q = embed_arrow_poly(ArrowPoly::pi, f);
  auto v = nat_is_iso(L.phi(Q, P), SampleBudget{});
  CHECK_FALSE(v.ok);
  CHECK(v.witness.has_value());
  CHECK_FALSE(check_pseudo(L, cfg).ok());
}

TEST_CASE("reduction to comultiplications and back") {
  auto cfg = small_config(59, 10);
  auto F = family_instance();
  auto L = build_span_oplax(F);
  auto rep = check_reduction(L, cfg);
  CHECK_MESSAGE(rep.ok(), describe_failure(rep));
  CHECK(rep.only("comult.").size() == 40);

  // The builders are already of the reduced form.
  auto C = span_comult(F);
  auto C2 = to_comult(L);
  SpanDiagonal d{FinMap(FinSet(3), FinSet(2), {0, 1, 1}), FinMap(FinSet(3), FinSet(2), {0, 0, 1}),
                 FinMap(FinSet(3), FinSet(1), {0, 0, 0})};
  CHECK(nat_equal(C2.Phi(d), C.Phi(d), budget()).ok);

  for (const auto& T : {extract_beck_data(F), extract_beck_data(sub_instance()),
                        monoidal_triple(Tensor::product), monoidal_triple(Tensor::coproduct)}) {
    auto r = check_reduction(build_polyc_oplax(T), cfg);
    CHECK_MESSAGE(r.ok(), T.name << ": " << describe_failure(r));
  }
  CHECK_THROWS_AS(check_reduction(build_spaniso_oplax(monoidal_triple(Tensor::product).pair()), cfg),
                  Error);
}

TEST_CASE("extraction recovers the generating data") {
  auto F = family_instance();
  auto L = build_span_oplax(F);
  auto G = extract_sinister(L);
  Rng rng(61);
  for (int i = 0; i < 20; ++i) {
    auto g = random_map_from(rng, random_set(rng, 1, 3), 1, 3);
    auto f = random_map_into(rng, g.dom, 1, 3);
    CHECK(G.sigma(f) == F.sigma(f));
    CHECK(G.delta(f) == F.delta(f));
    CHECK(nat_equal(G.sigma.comp(g, f), F.sigma.comp(g, f), budget()).ok);
    CHECK(nat_equal(G.delta.comp(g, f), F.delta.comp(g, f), budget()).ok);
    auto a = G.sigma_delta(f), b = F.sigma_delta(f);
    CHECK(nat_equal(a.unit, b.unit, budget()).ok);
    CHECK(nat_equal(a.counit, b.counit, budget()).ok);
  }
  // Rebuilding from the extracted data gives back the same constraints.
  auto L2 = build_span_oplax(G);
  for (int i = 0; i < 10; ++i) {
    auto X = random_set(rng, 1, 3), Y = random_set(rng, 1, 3), Z = random_set(rng, 1, 3);
    auto p = random_span(rng, X, Y, 3), q = random_span(rng, Y, Z, 3);
    CHECK(nat_equal(L2.phi(q, p), L.phi(q, p), budget()).ok);
  }

  auto cfg = small_config(67, 12);
  for (const auto& T : {extract_beck_data(F), monoidal_triple(Tensor::product),
                        monoidal_triple(Tensor::coproduct)}) {
    auto K = build_polyc_oplax(T);
    auto T2 = extract_triple(K);
    for (const auto& sq : sample_pullback_squares(cfg)) {
      CHECK(nat_equal(T2.beck(sq), T.beck(sq), budget()).ok);
      CHECK(nat_equal(T2.tensor.comp(sq.f, sq.gp), T.tensor.comp(sq.f, sq.gp), budget()).ok);
    }
    auto P = T.pair();
    auto K2 = build_spaniso_oplax(P);
    auto P2 = extract_pair(K2);
    for (const auto& sq : sample_pullback_squares(cfg))
      CHECK(nat_equal(P2.beck(sq), P.beck(sq), budget()).ok);
  }
}

TEST_CASE("icons: identity, conjugation, generator extension") {
  auto cfg = small_config(71, 8);
  auto L = build_span_oplax(family_instance());
  auto id = check_icon(identity_icon(L), cfg);
  CHECK_MESSAGE(id.ok(), describe_failure(id));

  auto a = conjugation_icon(L, 77);
  auto rep = check_icon(a, cfg);
  CHECK_MESSAGE(rep.ok(), describe_failure(rep));
  for (const auto& r : rep.results()) CHECK(r.note == "checked on constructed examples");

  // The icon is determined by its components at (1, t).
  auto ext = icon_extend(
      [&](const FinMap& t) { return a.component(embed_arrow_span(ArrowEmbedding::sigma, t)); }, L,
      a.tgt);
  Rng rng(73);
  for (int i = 0; i < 15; ++i) {
    auto P = random_span(rng, random_set(rng, 1, 3), random_set(rng, 1, 3), 3);
    CHECK(nat_equal(ext.component(P), a.component(P), budget()).ok);
  }
  // The component at (1, f) is recovered as a mate from the one at (f, 1).
  for (int i = 0; i < 10; ++i) {
    auto f = random_map_from(rng, random_set(rng, 1, 3), 1, 3);
    CHECK(nat_equal(icon_mate_inverse(a, f),
                    nat_inverse(a.component(embed_arrow_span(ArrowEmbedding::sigma, f))),
                    budget())
              .ok);
  }

  auto Lc = build_polyc_oplax(extract_beck_data(family_instance()));
  auto ac = conjugation_icon(Lc, 79);
  auto repc = check_icon(ac, cfg);
  CHECK_MESSAGE(repc.ok(), describe_failure(repc));
  auto extc = icon_extend(
      [&](const FinMap& t) { return ac.component(embed_arrow_poly(ArrowPoly::sigma, t)); },
      [&](const FinMap& p) { return ac.component(embed_arrow_poly(ArrowPoly::pi, p)); }, Lc, ac.tgt);
  for (int i = 0; i < 10; ++i) {
    auto P = random_poly(rng, random_set(rng, 1, 2), random_set(rng, 1, 2), 2, 2);
    CHECK(nat_equal(extc.component(P), ac.component(P), budget()).ok);
  }
}

TEST_CASE("fault fixtures fail with witnesses") {
  auto cfg = small_config(83, 10);
  auto F = family_instance();

  auto broken = check_oplax_laws(with_broken_phi(build_span_oplax(F)), cfg);
  REQUIRE_FALSE(broken.ok());
  CHECK(broken.first_failure()->witness.has_value());

  auto bc = check_oplax_laws(build_polyc_oplax(with_broken_beck(extract_beck_data(F))), cfg);
  REQUIRE_FALSE(bc.ok());
  CHECK(bc.first_failure()->witness.has_value());

  auto toy = non_gregarious_toy(F);
  auto c = check_gregarious(toy, GregariousMode::constraint, cfg);
  CHECK_MESSAGE(c.ok(), describe_failure(c));
  auto a = check_gregarious(toy, GregariousMode::adjunction, cfg);
  REQUIRE_FALSE(a.ok());
  CHECK(a.first_failure()->witness.has_value());

  auto sq = non_pullback_square();
  CHECK(sq.commutes());
  CHECK_FALSE(sq.is_pullback());
  auto v = delta_pi_condition_at(F, sq, SampleBudget{});
  CHECK_FALSE(v.ok);
  CHECK(v.witness.has_value());
}
