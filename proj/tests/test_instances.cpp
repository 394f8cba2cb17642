#include <doctest.h>

#include "polyspan/instances.hpp"
#include "polyspan/sample.hpp"

using namespace polyspan;

namespace {

CheckConfig small_config(std::uint64_t seed = 5, std::size_t samples = 15) {
  CheckConfig c;
  c.max_size = 3;
  c.samples = samples;
  c.seed = seed;
  c.families.samples = 12;
  return c;
}

std::string describe_failure(const Report& r) {
  auto f = r.first_failure();
  if (!f) return "none";
  return to_json(*f).dump();
}

}  // namespace

TEST_CASE("identity maps go to identity functors") {
  auto F = family_instance();
  auto id = FinMap::identity(FinSet(3));
  CHECK(F.sigma(id).is_identity());
  CHECK(F.delta(id).is_identity());
  CHECK((*F.pi)(id).is_identity());
  SampleBudget b;
  CHECK(nat_equal(F.sigma.comp(id, id), nat_identity(F.sigma(id)), b).ok);

  for (auto t : {Tensor::product, Tensor::coproduct}) {
    auto T = monoidal_triple(t);
    CHECK(T.sigma(id).is_identity());
    CHECK(T.delta(id).is_identity());
    CHECK(T.tensor(id).is_identity());
  }
}

TEST_CASE("pseudofunctor coherence of the primitive functors") {
  auto cfg = small_config(3, 12);
  for (const auto& P : {sigma_pseudofunctor(), delta_pseudofunctor(), pi_pseudofunctor()}) {
    auto rep = pseudofunctor_check(P, 0, cfg);
    CHECK_MESSAGE(rep.ok(), describe_failure(rep));
    CHECK(rep.size() == 36);
  }
  auto rep = pseudofunctor_check(exists_pseudofunctor(), 1, cfg);
  CHECK_MESSAGE(rep.ok(), describe_failure(rep));
}

TEST_CASE("declared adjunctions satisfy the triangle identities") {
  auto cfg = small_config(7, 20);
  for (const auto& F : {family_instance(), sub_instance()}) {
    auto rep = adjunction_check(F, cfg);
    CHECK_MESSAGE(rep.ok(), F.name << ": " << describe_failure(rep));
    CHECK(rep.size() == 40);
  }
}

TEST_CASE("chosen and reparameterized squares") {
  auto cfg = small_config(9, 40);
  std::size_t reparam = 0;
  for (const auto& sq : sample_pullback_squares(cfg)) {
    CHECK(sq.is_pullback());
    auto chosen = chosen_square(sq.f, sq.g);
    if (!(chosen.fp == sq.fp)) ++reparam;
  }
  CHECK(reparam > 0);

  // A commuting square that is not a pullback: both legs into a point.
  FinMap f(FinSet(2), FinSet(1), {0, 0});
  Square bad{f, f, FinMap::constant(FinSet(1), FinSet(2), 0), FinMap::constant(FinSet(1), FinSet(2), 0)};
  CHECK(bad.commutes());
  CHECK_FALSE(bad.is_pullback());
}

TEST_CASE("family Beck cells are bijective at sampled pullbacks") {
  auto F = family_instance();
  auto cfg = small_config(11, 25);
  for (auto c : {Condition::sigma_delta, Condition::delta_tensor, Condition::sigma_tensor}) {
    auto rep = condition_check(F, c, cfg);
    CHECK_MESSAGE(rep.ok(), condition_name(c) << ": " << describe_failure(rep));
    CHECK(rep.size() == 25);
  }
}

TEST_CASE("extracted Beck data: identity square and kernel pairs") {
  auto F = family_instance();
  auto T = extract_beck_data(F);
  SampleBudget b;
  b.samples = 30;

  auto id = FinMap::identity(FinSet(3));
  auto idsq = Square{id, id, id, id};
  CHECK(nat_equal(T.beck(idsq), nat_identity(FamFunctor::identity(FinSet(3))), b).ok);

  Rng rng(21);
  for (int i = 0; i < 20; ++i) {
    auto f = random_map_from(rng, random_set(rng, 1, 3), 1, 2);
    auto sq = chosen_square(f, f);  // kernel pair
    auto beck = T.beck(sq);
    auto reverse = delta_pi_mate(F, sq);
    CHECK(nat_is_iso(beck, b).ok);
    CHECK(nat_equal(nat_vcomp(reverse, beck), nat_identity(beck.src), b).ok);
    CHECK(nat_equal(nat_vcomp(beck, reverse), nat_identity(reverse.src), b).ok);
  }
}

TEST_CASE("direct monoidal Beck cells agree with the mate-derived ones") {
  auto T = extract_beck_data(family_instance());
  auto product = monoidal_triple(Tensor::product);
  auto coproduct = monoidal_triple(Tensor::coproduct);
  auto cfg = small_config(13, 25);
  SampleBudget b;
  for (const auto& sq : sample_pullback_squares(cfg)) {
    CHECK(nat_equal(product.beck(sq), T.beck(sq), b).ok);
    // With the coproduct tensor the interchange is the sigma-delta Beck cell.
    CHECK(nat_equal(coproduct.beck(sq), sigma_delta_beck(T.sigma, T.sigma_delta, sq), b).ok);
  }
}

TEST_CASE("Beck pair coherence conditions") {
  auto cfg = small_config(17, 12);
  std::vector<LaxBeckTriple> triples = {extract_beck_data(family_instance()),
                                        extract_beck_data(sub_instance()),
                                        monoidal_triple(Tensor::product),
                                        monoidal_triple(Tensor::coproduct)};
  for (const auto& T : triples) {
    auto rep = beck_pair_coherence(T.pair(), cfg);
    CHECK_MESSAGE(rep.ok(), T.name << ": " << describe_failure(rep));
    CHECK(rep.only("beck.horizontal").size() == 12);
    CHECK(rep.only("beck.vertical").size() == 12);
    CHECK(rep.only("beck.nullary").size() == 24);
  }
}

TEST_CASE("distributivity discriminates the two tensors") {
  auto cfg = small_config(19, 40);
  auto prod = condition_check(monoidal_triple(Tensor::product), Condition::sigma_tensor, cfg);
  CHECK_MESSAGE(prod.ok(), describe_failure(prod));

  auto cop = condition_check(monoidal_triple(Tensor::coproduct), Condition::sigma_tensor, cfg);
  REQUIRE_FALSE(cop.ok());
  auto w = cop.first_failure();
  REQUIRE(w->witness.has_value());
  CHECK(w->law == "condition.sigma-tensor");

  // The smallest failure: two points over one, each with a two-element fiber.
  FinMap f(FinSet(2), FinSet(1), {0, 0});
  FinMap u(FinSet(4), FinSet(2), {0, 0, 1, 1});
  auto d = dist_pullback(f, u);
  CHECK(d.Y.size == 4);
  auto dist = distributivity_morphism(monoidal_triple(Tensor::coproduct), d);
  auto x = Family::of_sizes(FinSet(4), {1, 1, 1, 1});
  // Every element of X occurs once per section through it: 8 against 4.
  CHECK(dist.at(x).components[0].dom.size == 8);
  CHECK(dist.at(x).components[0].cod.size == 4);
  CHECK_FALSE(distributivity_condition_at(monoidal_triple(Tensor::coproduct), d, SampleBudget{}).ok);
}

TEST_CASE("Sub: quantifiers on a two-point set") {
  FinMap f(FinSet(2), FinSet(1), {0, 0});
  CHECK(sub_forall(f, {true, false}) == Subset{false});
  CHECK(sub_forall(f, {true, true}) == Subset{true});
  CHECK(sub_exists(f, {true, false}) == Subset{true});
  CHECK(sub_exists(f, {false, false}) == Subset{false});

  // The family functors agree with the set-level quantifiers on every subset.
  auto F = sub_instance();
  Rng rng(23);
  for (int i = 0; i < 30; ++i) {
    auto g = random_map_from(rng, random_set(rng, 0, 4), 1, 3);
    for (const auto& s : SubPoset{g.dom}.elements()) {
      auto x = subset_family(g.dom, s);
      CHECK(family_subset(F.sigma(g).eval(x)) == sub_exists(g, s));
      CHECK(family_subset((*F.pi)(g).eval(x)) == sub_forall(g, s));
    }
    for (const auto& t : SubPoset{g.cod}.elements())
      CHECK(family_subset(F.delta(g).eval(subset_family(g.cod, t))) == sub_preimage(g, t));
  }
}

TEST_CASE("Sub: Galois chains exhaustively up to size 4") {
  auto rep = sub_galois_check(4);
  CHECK_MESSAGE(rep.ok(), describe_failure(rep));
  for (const auto& r : rep.results()) CHECK(r.exhaustive);
  CHECK(rep.only("sub.lattice").size() == 5);
}

TEST_CASE("Sub: Beck and distributivity exhaustively up to size 3") {
  auto F = sub_instance();
  CheckConfig cfg;
  cfg.max_size = 3;
  cfg.exhaustive = true;
  cfg.families.max_entry = 1;
  cfg.families.samples = 8;  // 2^3 subsets: every family is visited
  for (auto c : {Condition::sigma_delta, Condition::delta_tensor, Condition::sigma_tensor}) {
    auto rep = condition_check(F, c, cfg);
    CHECK_MESSAGE(rep.ok(), condition_name(c) << ": " << describe_failure(rep));
    for (const auto& r : rep.results()) CHECK(r.exhaustive);
    CHECK(rep.size() > 1000);
  }
}

TEST_CASE("a non-pullback square is caught with a witness") {
  auto F = family_instance();
  FinMap f(FinSet(2), FinSet(1), {0, 0});
  auto pt = FinMap::constant(FinSet(1), FinSet(2), 0);
  Square bad{f, f, pt, pt};
  auto v = delta_pi_condition_at(F, bad, SampleBudget{});
  CHECK_FALSE(v.ok);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->family.index.size == 2);
  CHECK_FALSE(sigma_delta_condition_at(extract_beck_data(F), bad, SampleBudget{}).ok);
}

TEST_CASE("subjects by name") {
  for (const auto& n : subject_names()) {
    auto s = subject_by_name(n);
    CHECK(s.name == n);
    CHECK(s.triple.beck);
  }
  CHECK(subject_by_name("sub").triple.entry_cap == 1);
  CHECK_THROWS_AS(subject_by_name("nope"), Error);
  CHECK_THROWS_AS(extract_beck_data(sinister_part(monoidal_triple(Tensor::product))), Error);
}
