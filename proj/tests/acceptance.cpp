// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "polyspan/reconstruct.hpp"
#include "polyspan/sample.hpp"

using namespace polyspan;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

Outcome from(const Report& r, const std::string& what) {
  if (r.ok()) {
    std::size_t skipped = 0;
    for (const auto& x : r.results()) skipped += x.skipped;
    if (skipped == 0) return {};
    return {true, what + ", " + std::to_string(skipped) + " oversized families skipped"};
  }
  return fail(what + ": " + to_json(*r.first_failure()).dump());
}

Outcome from(const Verdict& v, const std::string& what) {
  if (v.ok) return {};
  return fail(what + (v.witness ? ": " + encode(*v.witness).dump() : std::string()));
}

// Functions from every set of size 0..n into cod.
std::vector<FinMap> maps_upto(std::size_t n, const FinSet& cod) {
  std::vector<FinMap> out;
  for (std::size_t k = 0; k <= n; ++k)
    for (auto& m : enumerate_maps(FinSet(k), cod)) out.push_back(std::move(m));
  return out;
}

CheckConfig config(std::uint64_t seed, std::size_t samples) {
  CheckConfig c;
  c.max_size = 3;
  c.samples = samples;
  c.seed = seed;
  c.families.samples = 10;
  return c;
}

Outcome span_matrix() {
  Rng rng(101);
  for (int i = 0; i < 200; ++i) {
    auto X = random_set(rng, 0, 5), Y = random_set(rng, 0, 5), Z = random_set(rng, 0, 5);
    auto p = random_span(rng, X, Y, 5);
    auto q = random_span(rng, Y, Z, 5);
    if (to_matrix(compose_span(q, p)) != matrix_product(to_matrix(q), to_matrix(p), Y.size, X.size))
      return fail("pair " + std::to_string(i) + ": " + json::array({encode(q), encode(p)}).dump());
  }
  return {};
}

Outcome dpb_counting_and_terminality() {
  Rng rng(102);
  for (int i = 0; i < 200; ++i) {
    auto f = random_map_from(rng, random_set(rng, 0, 4), 1, 4);
    auto u = random_map_into(rng, f.dom, 0, f.dom.size == 0 ? 0 : 4);
    auto over = fibers(u);
    std::size_t expect = 0;
    for (const auto& fib : fibers(f)) {
      std::size_t prod = 1;
      for (auto a : fib) prod *= over[a].size();
      expect += prod;
    }
    if (dist_pullback(f, u).Y.size != expect)
      return fail("|Y| mismatch at " + json::array({encode(f), encode(u)}).dump());
  }

  // Every pullback around (f, u) arises from the chosen one along a unique
  // t0: Y' -> Y; count all factorizations by brute force.
  for (std::size_t bs = 0; bs <= 3; ++bs)
    for (auto& f : maps_upto(3, FinSet(bs)))
      for (auto& u : maps_upto(3, f.dom)) {
        auto d = dist_pullback(f, u);
        for (std::size_t ys = 0; ys <= 3; ++ys)
          for (auto& t0 : enumerate_maps(FinSet(ys), d.Y)) {
            FinMap r2 = compose_map(d.r, t0);
            auto outer = pullback(f, r2);
            std::vector<std::size_t> pt(outer.apex.size);
            for (std::size_t k = 0; k < outer.apex.size; ++k) {
              auto [a, y2] = outer.pairs[k];
              pt[k] = d.p(d.tpb.at(a, t0(y2)));
            }
            FinMap pc(outer.apex, u.dom, pt);
            std::size_t solutions = 0;
            for (auto& t : enumerate_maps(FinSet(ys), d.Y)) {
              if (compose_map(d.r, t) != r2) continue;
              for (auto& s : enumerate_maps(outer.apex, d.T))
                solutions += compose_map(d.p, s) == pc &&
                             compose_map(d.q, s) == compose_map(t, outer.proj2);
            }
            if (solutions != 1)
              return fail(std::to_string(solutions) + " factorizations at " +
                          json::array({encode(f), encode(u), encode(t0)}).dump());
          }
      }
  return {};
}

Outcome poly_soundness() {
  Rng rng(103);
  SampleBudget b{3, 20, 103};
  for (int i = 0; i < 50; ++i) {
    auto I = random_set(rng, 1, 3), J = random_set(rng, 1, 3), K = random_set(rng, 1, 3);
    auto P = random_poly(rng, I, J, 3, 3);
    auto Q = random_poly(rng, J, K, 3, 3);
    auto c = poly_comparison(Q, P);
    auto in = json::array({encode(Q), encode(P)}).dump();
    if (!(c.src == eval_poly_as_functor(compose_poly(Q, P))) ||
        !(c.tgt == compose(eval_poly_as_functor(Q), eval_poly_as_functor(P))))
      return fail("boundary of the comparison at " + in);
    b.seed = 1000 + i;
    if (auto o = from(nat_is_iso(c, b), "not a bijection at " + in); !o.ok) return o;
    if (auto o = from(nat_is_natural(c, b), "not natural at " + in); !o.ok) return o;
  }
  return {};
}

Outcome single_variable_counts() {
  // x + x^2 then 1 + x.
  FinSet one(1);
  Polynomial P(FinMap::constant(FinSet(3), one, 0), FinMap(FinSet(3), FinSet(2), {0, 1, 1}),
               FinMap::constant(FinSet(2), one, 0));
  Polynomial Q(FinMap::constant(FinSet(1), one, 0), FinMap(FinSet(1), FinSet(2), {1}),
               FinMap::constant(FinSet(2), one, 0));
  auto F = eval_poly_as_functor(compose_poly(Q, P));

  // Brute force: an element of R(X) is a shape with a choice of X-element per position.
  auto count = [](const Polynomial& R, std::size_t x) {
    std::size_t n = 0;
    for (const auto& fib : fibers(R.p)) n += enumerate_maps(FinSet(fib.size()), FinSet(x)).size();
    return n;
  };
  const std::vector<std::size_t> expect{1, 3, 7, 13};
  for (std::size_t x = 0; x <= 3; ++x) {
    auto got = F.eval(Family::of_sizes(one, {x})).sizes()[0];
    auto inner = count(P, x);
    auto brute = count(Q, inner);
    if (got != expect[x] || brute != expect[x])
      return fail("|X| = " + std::to_string(x) + ": evaluated " + std::to_string(got) +
                  ", enumerated " + std::to_string(brute));
  }
  return {};
}

Outcome adjunction_triangles() {
  Rng rng(105);
  for (int i = 0; i < 50; ++i) {
    auto f = random_map_from(rng, random_set(rng, 0, 4), 1, 4);
    auto in = encode(f).dump();
    auto s = span_adjunction(f);
    if (!span_triangle_left(s) || !span_triangle_right(s)) return fail("span, f = " + in);
    for (auto m : {PolyAdjMode::sigma_delta, PolyAdjMode::delta_pi}) {
      auto a = poly_adjunction(m, f);
      if (!poly_triangle_left(a) || !poly_triangle_right(a)) return fail("poly, f = " + in);
    }
  }
  return {};
}

Outcome reconstruction_laws() {
  auto cfg = config(106, 30);
  auto F = family_instance();
  auto P = monoidal_triple(Tensor::product);
  Report rep;
  auto both = [&](const auto& L) {
    rep.append(check_oplax_laws(L, cfg));
    rep.append(check_gregarious(L, GregariousMode::constraint, cfg));
    rep.append(check_gregarious(L, GregariousMode::adjunction, cfg));
  };
  both(build_span_oplax(F));
  both(build_spaniso_oplax(P.pair()));
  both(build_polyc_oplax(extract_beck_data(F)));
  both(build_poly_oplax(F));
  for (const auto& I : {F, sub_instance()}) {
    rep.append(check_pseudo(build_span_oplax(I), cfg));
    rep.append(check_pseudo(build_polyc_oplax(extract_beck_data(I)), cfg));
  }
  return from(rep, std::to_string(rep.size()) + " checks");
}

Outcome condition_discrimination() {
  auto cfg = config(107, 30);
  auto prod = condition_check(monoidal_triple(Tensor::product), Condition::sigma_tensor, cfg);
  if (!prod.ok()) return from(prod, "product tensor");
  auto cop = condition_check(monoidal_triple(Tensor::coproduct), Condition::sigma_tensor, cfg);
  auto w = cop.first_failure();
  if (!w) return fail("coproduct tensor passed");
  if (!w->witness) return fail("coproduct failure carries no witness");
  return {};
}

Outcome mates() {
  auto cfg = config(108, 100);
  auto F = family_instance();
  SampleBudget b;
  auto squares = sample_pullback_squares(cfg);
  if (squares.size() < 100) return fail("only " + std::to_string(squares.size()) + " squares");
  for (const auto& sq : squares) {
    auto alpha = nat_vcomp(F.sigma.comp_inv(sq.g, sq.fp), F.sigma.comp(sq.f, sq.gp));
    auto adj1 = F.sigma_delta(sq.fp), adj2 = F.sigma_delta(sq.f);
    auto G = F.sigma(sq.gp), H = F.sigma(sq.g);
    auto beta = mate(alpha, G, H, adj1, adj2);
    auto in = encode(sq).dump();
    if (auto o = from(nat_equal(mate_inverse(beta, G, H, adj1, adj2), alpha, b), "double mate at " + in);
        !o.ok)
      return o;
    auto m = mate(nat_identity(F.sigma(sq.f)), F.sigma(sq.f), FamFunctor::identity(sq.f.cod), adj2,
                  adjunction_identity(sq.f.cod));
    if (auto o = from(nat_equal(m, adj2.counit, b), "counit at " + in); !o.ok) return o;
  }
  auto L = build_span_oplax(F);
  Rng rng(1080);
  for (int i = 0; i < 20; ++i) {
    auto a = conjugation_icon(L, rng.next());
    auto f = random_map_from(rng, random_set(rng, 1, 3), 1, 3);
    auto comp = a.component(embed_arrow_span(ArrowEmbedding::sigma, f));
    auto inv = icon_mate_inverse(a, f);
    auto in = encode(f).dump();
    if (auto o = from(nat_equal(nat_vcomp(inv, comp), nat_identity(comp.src), b), "icon at " + in);
        !o.ok)
      return o;
    if (auto o = from(nat_equal(nat_vcomp(comp, inv), nat_identity(comp.tgt), b), "icon at " + in);
        !o.ok)
      return o;
  }
  return {};
}

Outcome generic_reduction() {
  auto cfg = config(109, 10);
  Report rep;
  for (const auto& I : {family_instance(), sub_instance()})
    rep.append(check_reduction(build_span_oplax(I), cfg));
  for (const auto& T : {extract_beck_data(family_instance()), extract_beck_data(sub_instance()),
                        monoidal_triple(Tensor::product), monoidal_triple(Tensor::coproduct)})
    rep.append(check_reduction(build_polyc_oplax(T), cfg));
  if (rep.only("comult.").size() == 0 || rep.only("reduction.").size() == 0)
    return fail("no reduction checks were run");
  return from(rep, std::to_string(rep.size()) + " checks");
}

Outcome fault_injection() {
  auto cfg = config(110, 10);
  auto F = family_instance();
  auto caught = [](const Report& r, const std::string& what) -> Outcome {
    auto w = r.first_failure();
    if (!w) return fail(what + " passed");
    if (!w->witness) return fail(what + " failed without a witness");
    return {};
  };
  if (auto o = caught(check_oplax_laws(build_polyc_oplax(with_broken_beck(extract_beck_data(F))), cfg),
                      "broken Beck cell");
      !o.ok)
    return o;
  if (auto o = caught(check_oplax_laws(with_broken_phi(build_span_oplax(F)), cfg), "broken span phi");
      !o.ok)
    return o;
  if (auto o = caught(check_oplax_laws(with_broken_phi(build_polyc_oplax(extract_beck_data(F))), cfg),
                      "broken poly phi");
      !o.ok)
    return o;
  auto sq = non_pullback_square();
  auto v = delta_pi_condition_at(F, sq, SampleBudget{});
  if (v.ok) return fail("non-pullback square passed");
  if (!v.witness) return fail("non-pullback square failed without a witness");
  return {};
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;  // 0: untimed
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "span composition matches the matrix product", 1, span_matrix},
      {2, "distributivity pullback size and terminality", 10, dpb_counting_and_terminality},
      {3, "polynomial composition agrees with functor composition", 30, poly_soundness},
      {4, "single-variable composite counts 1, 3, 7, 13", 0, single_variable_counts},
      {5, "adjunction triangle identities", 0, adjunction_triangles},
      {6, "reconstruction laws and pseudofunctoriality", 0, reconstruction_laws},
      {7, "distributivity separates product from coproduct", 0, condition_discrimination},
      {8, "mates: double mate, counit, icon inverses", 0, mates},
      {9, "reduction round trips and comultiplication laws", 0, generic_reduction},
      {10, "fault fixtures fail with witnesses", 0, fault_injection},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.ok && c.limit_s > 0 && secs >= c.limit_s)
      o = fail("took " + std::to_string(secs) + " s, limit " + std::to_string(c.limit_s) + " s");
    std::printf("%s %2d  %s (%.2f s)%s%s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs,
                o.detail.empty() ? "" : "  ", o.detail.c_str());
    std::fflush(stdout);
    failed += !o.ok;
  }
  return failed ? 1 : 0;
}
