#include "polyspan/suites.hpp"

#include <algorithm>

#include "polyspan/instances.hpp"
#include "polyspan/reconstruct.hpp"
#include "polyspan/sample.hpp"

namespace polyspan {

namespace {

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
  return seed * 0x9e3779b97f4a7c15ULL + salt;
}

Verdict fact(bool ok, const std::string& detail = {}) {
  Verdict v;
  v.ok = ok;
  v.checked = 1;
  if (!ok) v.witness = Witness{Family{}, 0, 0, detail};
  return v;
}

// The evaluation oracles describe Sigma t, Pi p, Delta s on all families: they
// apply to instances without an entry cap whose tensor is the dependent product.
bool span_semantics(const Subject& s) { return s.instance && s.instance->entry_cap == 0; }

bool poly_semantics(const Subject& s) {
  FinMap f(FinSet(2), FinSet(1), {0, 0});
  return s.triple.entry_cap == 0 && s.triple.tensor(f) == FamFunctor::pi(f);
}

CheckConfig check_config(const SuiteConfig& cfg, std::uint64_t salt) {
  CheckConfig c;
  c.max_size = cfg.max_size;
  c.samples = cfg.samples;
  c.seed = mix(cfg.seed, salt);
  c.families.max_entry = 2;
  c.families.samples = 12;
  c.families.seed = cfg.seed;
  return c;
}

// Poly checks nest composites; keep their sample counts proportionate.
CheckConfig poly_config(const SuiteConfig& cfg, std::uint64_t salt) {
  auto c = check_config(cfg, salt);
  c.samples = std::max<std::size_t>(1, cfg.samples / 2);
  c.families.samples = 8;
  return c;
}

Report finset_suite(const SuiteConfig& cfg) {
  Report rep;
  Rng rng(mix(cfg.seed, 1));
  auto hi = cfg.max_size;
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    auto B = random_set(rng, 1, hi);
    auto f = random_map_into(rng, B, 0, hi);
    auto g = random_map_into(rng, B, 0, hi);
    auto pb = pullback(f, g);
    record(rep, "finset.pullback", json::array({encode(f), encode(g)}), [&] {
      if (!is_pullback_square(pb.proj2, pb.proj1, g, f)) return fact(false, "not a pullback");
      return fact(pullback_mediate(pb, pb.proj1, pb.proj2).is_identity(),
                  "mediator of the projections is not the identity");
    });

    auto f2 = random_map_into(rng, B, 1, hi);
    auto u = random_map_into(rng, f2.dom, 0, hi);
    record(rep, "finset.dpb", json::array({encode(f2), encode(u)}), [&] {
      auto d = dist_pullback(f2, u);
      auto over = fibers(u);
      std::size_t expect = 0;
      for (const auto& fib : fibers(f2)) {
        std::size_t prod = 1;
        for (auto a : fib) prod *= over[a].size();
        expect += prod;
      }
      if (d.Y.size != expect)
        return fact(false, "|Y| = " + std::to_string(d.Y.size) + ", expected " +
                               std::to_string(expect));
      return fact(is_pullback_square(d.q, compose_map(u, d.p), d.r, f2),
                  "outer rectangle is not a pullback");
    });
  }
  return rep;
}

Report span_suite(const SuiteConfig& cfg, const Subject& subj) {
  Report rep;
  Rng rng(mix(cfg.seed, 2));
  auto hi = cfg.max_size;
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    auto X = random_set(rng, 1, hi), Y = random_set(rng, 1, hi), Z = random_set(rng, 1, hi);
    auto p = random_span(rng, X, Y, hi);
    auto q = random_span(rng, Y, Z, hi);
    record(rep, "span.matrix", json::array({encode(q), encode(p)}), [&] {
      return fact(to_matrix(compose_span(q, p)) ==
                      matrix_product(to_matrix(q), to_matrix(p), Y.size, X.size),
                  "matrix of the composite differs from the product");
    });
    auto f = random_map_from(rng, X, 1, hi);
    record(rep, "span.adjunction", json::array({encode(f)}), [&] {
      auto adj = span_adjunction(f);
      return fact(span_triangle_left(adj) && span_triangle_right(adj), "triangle identity");
    });
  }

  auto c = check_config(cfg, 21);
  if (subj.instance) {
    auto L = build_span_oplax(*subj.instance);
    rep.append(check_oplax_laws(L, c));
    rep.append(check_gregarious(L, GregariousMode::constraint, c));
    rep.append(check_gregarious(L, GregariousMode::adjunction, c));
    if (span_semantics(subj)) {
      Rng r2(mix(cfg.seed, 22));
      for (std::size_t i = 0; i < cfg.samples; ++i) {
        auto s = random_span(r2, random_set(r2, 1, hi), random_set(r2, 1, hi), hi);
        auto cell = random_span_2cell_into(r2, s, hi, false);
        record(rep, "span.local-eval", json::array({encode(cell.src), encode(s)}),
               [&] { return nat_equal(L.two(cell), eval_span_two_cell(cell), c.families); });
      }
    }
  }
  auto K = build_spaniso_oplax(subj.triple.pair());
  rep.append(check_oplax_laws(K, c));
  rep.append(check_gregarious(K, GregariousMode::constraint, c));
  rep.append(check_gregarious(K, GregariousMode::adjunction, c));
  return rep;
}

Report polycart_suite(const SuiteConfig& cfg, const Subject& subj) {
  Report rep;
  auto c = poly_config(cfg, 31);
  const auto& T = subj.triple;
  auto L = build_polyc_oplax(T);
  rep.append(check_oplax_laws(L, c));
  rep.append(check_gregarious(L, GregariousMode::constraint, c));
  rep.append(check_gregarious(L, GregariousMode::adjunction, c));

  Rng rng(mix(cfg.seed, 3));
  auto budget = clamp(c.families, T.entry_cap);
  for (std::size_t i = 0; i < c.samples; ++i) {
    auto I = random_set(rng, 1, 2), J = random_set(rng, 1, 2), K = random_set(rng, 1, 2);
    auto P = random_poly(rng, I, J, 2, 2);
    auto Q = random_poly(rng, J, K, 2, 2);
    json in = json::array({encode(Q), encode(P)});
    record(rep, "poly-cart.beck-dist-constraint", in,
           [&] { return nat_equal(L.phi(Q, P), polyc_beck_dist_constraint(T, Q, P), budget); });
    auto f = random_map_from(rng, I, 1, 2);
    record(rep, "poly-cart.adjunction", json::array({encode(f)}), [&] {
      for (auto m : {PolyAdjMode::sigma_delta, PolyAdjMode::delta_pi}) {
        auto adj = poly_adjunction(m, f);
        if (!poly_triangle_left(adj) || !poly_triangle_right(adj))
          return fact(false, "triangle identity");
      }
      return fact(true);
    });
    if (poly_semantics(subj)) {
      record(rep, "poly-cart.comparison", in,
             [&] { return nat_equal(L.phi(Q, P), poly_comparison(Q, P), budget); });
      auto cell = random_cart_into(rng, P, 2);
      record(rep, "poly-cart.local-eval", json::array({encode(cell.src), encode(P)}),
             [&] { return nat_equal(L.two(cell), eval_two_cell(cell), budget); });
    }
  }
  return rep;
}

Report polygeneral_suite(const SuiteConfig& cfg, const Subject& subj) {
  Report rep;
  const auto& F = *subj.instance;
  auto c = poly_config(cfg, 41);
  auto L = build_poly_oplax(F);
  auto Lc = build_polyc_oplax(extract_beck_data(F));
  rep.append(check_oplax_laws(L, c));
  rep.append(check_gregarious(L, GregariousMode::constraint, c));
  rep.append(check_gregarious(L, GregariousMode::adjunction, c));

  Rng rng(mix(cfg.seed, 4));
  auto budget = clamp(c.families, F.entry_cap);
  for (std::size_t i = 0; i < c.samples; ++i) {
    auto P = random_poly(rng, random_set(rng, 1, 2), random_set(rng, 1, 2), 2, 2);
    auto cart = random_cart_into(rng, P, 2);
    record(rep, "poly-general.restriction", json::array({encode(cart.src), encode(P)}),
           [&] { return nat_equal(L.two(gen2_from_cart(cart)), Lc.two(cart), budget); });
    auto g = random_general_into(rng, P, 2, 1);
    auto g2 = reparameterize(rng, g);
    record(rep, "poly-general.representative", json::array({encode(g.src), encode(P)}),
           [&] { return nat_equal(L.two(g2), L.two(g), budget); });
    if (poly_semantics(subj))
      record(rep, "poly-general.local-eval", json::array({encode(g.src), encode(P)}),
             [&] { return nat_equal(L.two(g), eval_two_cell(g), budget); });
  }
  return rep;
}

Report mates_suite(const SuiteConfig& cfg, const Subject& subj) {
  Report rep;
  auto c = check_config(cfg, 51);
  auto F = subj.instance ? *subj.instance : sinister_part(subj.triple);
  auto budget = clamp(c.families, F.entry_cap);
  for (const auto& sq : sample_pullback_squares(c)) {
    record(rep, "mates.double-mate", json::array({encode(sq)}), [&] {
      // The compositor square sigma_f sigma_gp => sigma_g sigma_fp.
      auto alpha = nat_vcomp(F.sigma.comp_inv(sq.g, sq.fp), F.sigma.comp(sq.f, sq.gp));
      auto adj1 = F.sigma_delta(sq.fp);
      auto adj2 = F.sigma_delta(sq.f);
      auto G = F.sigma(sq.gp), H = F.sigma(sq.g);
      auto beta = mate(alpha, G, H, adj1, adj2);
      auto v = nat_equal(mate_inverse(beta, G, H, adj1, adj2), alpha, budget);
      if (!v.ok) return v;
      return nat_equal(mate(mate_inverse(beta, G, H, adj1, adj2), G, H, adj1, adj2), beta, budget);
    });
    record(rep, "mates.counit", json::array({encode(sq.f)}), [&] {
      auto adj = F.sigma_delta(sq.f);
      auto m = mate(nat_identity(F.sigma(sq.f)), F.sigma(sq.f), FamFunctor::identity(sq.f.cod),
                    adj, adjunction_identity(sq.f.cod));
      return nat_equal(m, adj.counit, budget);
    });
  }

  // Inverse of an icon component at (1, f) as a mate, on conjugation icons.
  auto L = build_span_oplax(F);
  Rng rng(mix(cfg.seed, 5));
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    auto seed = rng.next();
    auto a = conjugation_icon(L, seed);
    auto f = random_map_from(rng, random_set(rng, 1, cfg.max_size), 1, cfg.max_size);
    record(rep, "mates.icon-inverse", json::array({encode(f), seed}), [&] {
      auto comp = a.component(embed_arrow_span(ArrowEmbedding::sigma, f));
      auto inv = icon_mate_inverse(a, f);
      auto v = nat_equal(nat_vcomp(inv, comp), nat_identity(comp.src), budget);
      if (!v.ok) return v;
      return nat_equal(nat_vcomp(comp, inv), nat_identity(comp.tgt), budget);
    });
  }
  return rep;
}

Report beck_suite(const SuiteConfig& cfg, const Subject& subj) {
  Report rep;
  auto c = check_config(cfg, 61);
  const auto& T = subj.triple;
  rep.append(condition_check(T, Condition::sigma_delta, c));
  rep.append(condition_check(T, Condition::delta_tensor, c));
  rep.append(beck_pair_coherence(T.pair(), c));

  auto budget = clamp(c.families, T.entry_cap);
  auto T2 = extract_triple(build_polyc_oplax(T));
  auto P2 = extract_pair(build_spaniso_oplax(T.pair()));
  for (const auto& sq : sample_pullback_squares(c)) {
    record(rep, "beck.extracted-triple", json::array({encode(sq)}),
           [&] { return nat_equal(T2.beck(sq), T.beck(sq), budget); });
    record(rep, "beck.extracted-pair", json::array({encode(sq)}),
           [&] { return nat_equal(P2.beck(sq), T.beck(sq), budget); });
  }
  if (subj.instance) {
    const auto& F = *subj.instance;
    auto L = build_span_oplax(F);
    Rng rng(mix(cfg.seed, 6));
    auto hi = cfg.max_size;
    for (std::size_t i = 0; i < cfg.samples; ++i) {
      auto X = random_set(rng, 1, hi), Y = random_set(rng, 1, hi), Z = random_set(rng, 1, hi);
      auto p = random_span(rng, X, Y, hi);
      auto q = random_span(rng, Y, Z, hi);
      record(rep, "beck.span-constraint", json::array({encode(q), encode(p)}),
             [&] { return nat_equal(L.phi(q, p), span_beck_constraint(F, q, p), budget); });
    }
  }
  return rep;
}

Report distributivity_suite(const SuiteConfig& cfg, const Subject& subj) {
  Report rep;
  rep.append(condition_check(subj.triple, Condition::sigma_tensor, check_config(cfg, 71)));
  // Pseudofunctoriality of the cartesian reconstruction comes with distributivity.
  rep.append(check_pseudo(build_polyc_oplax(subj.triple), poly_config(cfg, 72)));
  return rep;
}

Report reduction_suite(const SuiteConfig& cfg, const Subject& subj) {
  Report rep;
  if (subj.instance) rep.append(check_reduction(build_span_oplax(*subj.instance), check_config(cfg, 81)));
  rep.append(check_reduction(build_polyc_oplax(subj.triple), poly_config(cfg, 82)));
  return rep;
}

Report icons_suite(const SuiteConfig& cfg, const Subject& subj) {
  Report rep;
  auto c = check_config(cfg, 91);
  auto F = subj.instance ? *subj.instance : sinister_part(subj.triple);
  auto L = build_span_oplax(F);
  rep.append(check_icon(identity_icon(L), c));
  auto a = conjugation_icon(L, mix(cfg.seed, 92));
  rep.append(check_icon(a, c));

  auto pc = poly_config(cfg, 93);
  auto Lc = build_polyc_oplax(subj.triple);
  auto ac = conjugation_icon(Lc, mix(cfg.seed, 94));
  rep.append(check_icon(ac, pc));

  auto budget = clamp(c.families, F.entry_cap);
  auto ext = icon_extend(
      [a](const FinMap& t) { return a.component(embed_arrow_span(ArrowEmbedding::sigma, t)); }, L,
      a.tgt);
  auto extc = icon_extend(
      [ac](const FinMap& t) { return ac.component(embed_arrow_poly(ArrowPoly::sigma, t)); },
      [ac](const FinMap& p) { return ac.component(embed_arrow_poly(ArrowPoly::pi, p)); }, Lc,
      ac.tgt);
  Rng rng(mix(cfg.seed, 7));
  const std::string note = "checked on constructed examples";
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    auto P = random_span(rng, random_set(rng, 1, cfg.max_size), random_set(rng, 1, cfg.max_size),
                         cfg.max_size);
    try {
      rep.add("icon.extension", json::array({encode(P)}),
              nat_equal(ext.component(P), a.component(P), budget), note);
    } catch (const Error& e) {
      rep.add_failure("icon.extension", json::array({encode(P)}), e.what());
    }
    if (i % 2) continue;
    auto Q = random_poly(rng, random_set(rng, 1, 2), random_set(rng, 1, 2), 2, 2);
    try {
      rep.add("icon.extension", json::array({encode(Q)}),
              nat_equal(extc.component(Q), ac.component(Q), budget), note);
    } catch (const Error& e) {
      rep.add_failure("icon.extension", json::array({encode(Q)}), e.what());
    }
  }
  return rep;
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"finset", "span",           "poly-cart",         "poly-general", "mates",
          "beck",   "distributivity", "generic-reduction", "icons",        "all"};
}

Report run_suite(const SuiteConfig& cfg) {
  auto names = suite_names();
  if (std::find(names.begin(), names.end(), cfg.suite) == names.end())
    throw ConfigError("unknown suite \"" + cfg.suite + "\"");
  if (cfg.max_size < 1) throw ConfigError("max-size must be at least 1");
  if (cfg.samples < 1) throw ConfigError("samples must be at least 1");
  Subject subj;
  try {
    subj = subject_by_name(cfg.instance);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }

  auto one = [&](const std::string& s) -> Report {
    if (s == "finset") return finset_suite(cfg);
    if (s == "span") return span_suite(cfg, subj);
    if (s == "poly-cart") return polycart_suite(cfg, subj);
    if (s == "poly-general") return polygeneral_suite(cfg, subj);
    if (s == "mates") return mates_suite(cfg, subj);
    if (s == "beck") return beck_suite(cfg, subj);
    if (s == "distributivity") return distributivity_suite(cfg, subj);
    if (s == "generic-reduction") return reduction_suite(cfg, subj);
    return icons_suite(cfg, subj);
  };
  if (cfg.suite != "all") return one(cfg.suite);
  Report rep;
  for (const auto& s : names)
    if (s != "all") rep.append(one(s));
  return rep;
}

}  // namespace polyspan
