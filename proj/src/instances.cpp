#include "polyspan/instances.hpp"

#include <algorithm>

#include "polyspan/sample.hpp"

namespace polyspan {

// Pseudofunctors ------------------------------------------------------------

Pseudofunctor sigma_pseudofunctor() {
  return {"sigma", false, [](const FinMap& f) { return FamFunctor::sigma(f); }, sigma_compositor};
}

Pseudofunctor delta_pseudofunctor() {
  return {"delta", true, [](const FinMap& f) { return FamFunctor::delta(f); }, delta_compositor};
}

Pseudofunctor pi_pseudofunctor() {
  return {"pi", false, [](const FinMap& f) { return FamFunctor::pi(f); }, pi_compositor};
}

Pseudofunctor exists_pseudofunctor() {
  return {"exists", false, [](const FinMap& f) { return FamFunctor::exists(f); },
          exists_compositor};
}

// Squares -------------------------------------------------------------------

bool Square::commutes() const {
  return fp.dom == gp.dom && fp.cod == g.dom && gp.cod == f.dom && f.cod == g.cod &&
         compose_map(g, fp) == compose_map(f, gp);
}

bool Square::is_pullback() const { return commutes() && is_pullback_square(fp, gp, g, f); }

Square chosen_square(const FinMap& f, const FinMap& g) {
  auto pb = pullback(f, g);
  return Square{f, g, pb.proj2, pb.proj1};
}

json encode(const Square& sq) {
  return {{"f", encode(sq.f)}, {"g", encode(sq.g)}, {"fp", encode(sq.fp)}, {"gp", encode(sq.gp)}};
}

LaxBeckPair LaxBeckTriple::pair() const { return LaxBeckPair{name, tensor, delta, beck, entry_cap}; }

// Instances -----------------------------------------------------------------

Instance family_instance() {
  Instance F;
  F.name = "family";
  F.sigma = sigma_pseudofunctor();
  F.delta = delta_pseudofunctor();
  F.pi = pi_pseudofunctor();
  F.sigma_delta = [](const FinMap& f) { return family_adjunction(AdjMode::sigma_delta, f); };
  F.delta_pi = [](const FinMap& f) { return family_adjunction(AdjMode::delta_pi, f); };
  return F;
}

// Subsets are families with entries of size at most one; on those, pi is the
// universal quantifier.
Instance sub_instance() {
  Instance F;
  F.name = "sub";
  F.sigma = exists_pseudofunctor();
  F.delta = delta_pseudofunctor();
  F.pi = pi_pseudofunctor();
  F.sigma_delta = [](const FinMap& f) { return family_adjunction(AdjMode::exists_delta, f); };
  F.delta_pi = [](const FinMap& f) { return family_adjunction(AdjMode::delta_pi, f); };
  F.entry_cap = 1;
  return F;
}

namespace {

// Sections over f^-1(g c) restricted along gp to sections over fp^-1(c):
// Delta_g Pi_f => Pi_fp Delta_gp. Defined at every commuting square.
FamNatTrans restriction(const Square& sq) {
  auto src = compose(FamFunctor::delta(sq.g), FamFunctor::pi(sq.f));
  auto tgt = compose(FamFunctor::pi(sq.fp), FamFunctor::delta(sq.gp));
  return FamNatTrans{src, tgt,
                     [sq, src, tgt](const Family& x) {
                       PiLayout lf(sq.f, x);
                       Family dx = FamFunctor::delta(sq.gp).eval(x);
                       PiLayout lp(sq.fp, dx);
                       Family a = src.eval(x), b = tgt.eval(x);
                       std::vector<FinMap> comps;
                       for (std::size_t c = 0; c < a.index.size; ++c) {
                         std::size_t base = sq.g(c);
                         const auto& over = lf.fib[base];
                         std::vector<std::size_t> t(a.size(c));
                         for (std::size_t k = 0; k < t.size(); ++k) {
                           auto sec = lf.decode(base, k);
                           std::vector<std::size_t> out;
                           for (std::size_t p : lp.fib[c]) {
                             auto pos = std::lower_bound(over.begin(), over.end(), sq.gp(p)) -
                                        over.begin();
                             out.push_back(sec[static_cast<std::size_t>(pos)]);
                           }
                           t[k] = lp.encode(c, out);
                         }
                         comps.emplace_back(a.entries[c], b.entries[c], std::move(t));
                       }
                       return FamilyMap(a, b, std::move(comps));
                     },
                     "restrict"};
}

// Sigma_fp Delta_gp => Delta_g Sigma_f, (p, x) |-> (gp p, x).
FamNatTrans coproduct_interchange(const Square& sq) {
  auto src = compose(FamFunctor::sigma(sq.fp), FamFunctor::delta(sq.gp));
  auto tgt = compose(FamFunctor::delta(sq.g), FamFunctor::sigma(sq.f));
  return FamNatTrans{src, tgt,
                     [sq, src, tgt](const Family& x) {
                       Family dx = FamFunctor::delta(sq.gp).eval(x);
                       SigmaLayout ls(sq.fp, dx);
                       SigmaLayout lt(sq.f, x);
                       Family a = src.eval(x), b = tgt.eval(x);
                       std::vector<FinMap> comps;
                       for (std::size_t c = 0; c < a.index.size; ++c) {
                         std::vector<std::size_t> t(a.size(c));
                         for (std::size_t k = 0; k < t.size(); ++k) {
                           auto [p, elem] = ls.decode(c, k);
                           t[k] = lt.encode(sq.gp(p), elem);
                         }
                         comps.emplace_back(a.entries[c], b.entries[c], std::move(t));
                       }
                       return FamilyMap(a, b, std::move(comps));
                     },
                     "interchange"};
}

}  // namespace

LaxBeckTriple monoidal_triple(Tensor t) {
  LaxBeckTriple T;
  T.sigma = sigma_pseudofunctor();
  T.delta = delta_pseudofunctor();
  T.sigma_delta = [](const FinMap& f) { return family_adjunction(AdjMode::sigma_delta, f); };
  if (t == Tensor::product) {
    T.name = "monoidal-product";
    T.tensor = pi_pseudofunctor();
    T.beck = [](const Square& sq) {
      auto b = nat_inverse(restriction(sq));
      b.name = "beck";
      return b;
    };
  } else {
    T.name = "monoidal-coproduct";
    T.tensor = sigma_pseudofunctor();
    T.beck = coproduct_interchange;
  }
  return T;
}

Subject subject_by_name(const std::string& name) {
  if (name == "family") {
    auto F = family_instance();
    return {name, F, extract_beck_data(F)};
  }
  if (name == "sub") {
    auto F = sub_instance();
    return {name, F, extract_beck_data(F)};
  }
  if (name == "monoidal-product" || name == "monoidal-coproduct") {
    // lan_f = Sigma_f is two-sinister with reindexing and the fiberwise
    // product as its successive right adjoints, whichever tensor is chosen.
    auto T = monoidal_triple(name == "monoidal-product" ? Tensor::product : Tensor::coproduct);
    auto F = family_instance();
    F.name = name;
    return {name, F, T};
  }
  throw Error("unknown instance \"" + name + "\"");
}

std::vector<std::string> subject_names() {
  return {"family", "sub", "monoidal-product", "monoidal-coproduct"};
}

SampleBudget clamp(const SampleBudget& b, std::size_t entry_cap) {
  SampleBudget out = b;
  if (entry_cap) out.max_entry = std::min(out.max_entry, entry_cap);
  return out;
}

// Beck cells ----------------------------------------------------------------

FamNatTrans sigma_delta_beck(const Pseudofunctor& sigma, const AdjointRule& adj, const Square& sq) {
  if (!sq.commutes()) throw Error("sigma_delta_beck: square does not commute");
  // Sigma_g Sigma_fp => Sigma_(g fp) = Sigma_(f gp) => Sigma_f Sigma_gp
  auto alpha = nat_vcomp(sigma.comp_inv(sq.f, sq.gp), sigma.comp(sq.g, sq.fp));
  auto out = mate(alpha, sigma(sq.fp), sigma(sq.f), adj(sq.gp), adj(sq.g));
  out.name = "kappa";
  return out;
}

FamNatTrans delta_pi_mate(const Instance& F, const Square& sq) {
  if (!F.pi) throw Error("delta_pi_mate: " + F.name + " has no second right adjoint");
  if (!sq.commutes()) throw Error("delta_pi_mate: square does not commute");
  // Delta_fp Delta_g => Delta_(g fp) = Delta_(f gp) => Delta_gp Delta_f
  auto alpha = nat_vcomp(F.delta.comp_inv(sq.f, sq.gp), F.delta.comp(sq.g, sq.fp));
  auto out = mate(alpha, F.delta(sq.g), F.delta(sq.gp), F.delta_pi(sq.f), F.delta_pi(sq.fp));
  out.name = "beckmate";
  return out;
}

LaxBeckTriple extract_beck_data(const Instance& F) {
  if (!F.pi || !F.delta_pi) throw Error("extract_beck_data: " + F.name + " has no second right adjoint");
  LaxBeckTriple T;
  T.name = F.name;
  T.sigma = F.sigma;
  T.delta = F.delta;
  T.tensor = *F.pi;
  T.sigma_delta = F.sigma_delta;
  T.entry_cap = F.entry_cap;
  T.beck = [F](const Square& sq) {
    auto b = nat_inverse(delta_pi_mate(F, sq));
    b.name = "beck";
    return b;
  };
  return T;
}

Instance sinister_part(const LaxBeckTriple& t) {
  Instance F;
  F.name = t.name;
  F.sigma = t.sigma;
  F.delta = t.delta;
  F.sigma_delta = t.sigma_delta;
  F.entry_cap = t.entry_cap;
  return F;
}

FamNatTrans distributivity_morphism(const LaxBeckTriple& t, const DistPullbackResult& d) {
  auto sr = t.sigma(d.r);
  auto tq = t.tensor(d.q);
  auto dp = t.delta(d.p);
  auto su = t.sigma(d.u);
  auto tf = t.tensor(d.f);
  auto unit_u = t.sigma_delta(d.u).unit;
  auto counit_r = t.sigma_delta(d.r).counit;
  Square sq{d.f, d.r, d.q, compose_map(d.u, d.p)};

  auto s1 = whisker_left(compose({sr, tq, dp}), unit_u);
  auto s2 = whisker(compose(sr, tq), t.delta.comp(d.u, d.p), su);
  auto s3 = whisker(sr, t.beck(sq), su);
  auto s4 = whisker_right(counit_r, compose(tf, su));
  auto out = nat_vcomp({s4, s3, s2, s1});
  out.name = "dist";
  return out;
}

// Conditions ----------------------------------------------------------------

std::string condition_name(Condition c) {
  switch (c) {
    case Condition::sigma_delta:
      return "sigma-delta";
    case Condition::delta_tensor:
      return "delta-tensor";
    case Condition::sigma_tensor:
      return "sigma-tensor";
    case Condition::beck_pair_coherence:
      return "beck-pair-coherence";
  }
  return "?";
}

Verdict sigma_delta_condition_at(const LaxBeckTriple& t, const Square& sq, const SampleBudget& b) {
  return nat_is_iso(sigma_delta_beck(t.sigma, t.sigma_delta, sq), clamp(b, t.entry_cap));
}

Verdict delta_tensor_condition_at(const LaxBeckTriple& t, const Square& sq, const SampleBudget& b) {
  return nat_is_iso(t.beck(sq), clamp(b, t.entry_cap));
}

Verdict distributivity_condition_at(const LaxBeckTriple& t, const DistPullbackResult& d,
                                    const SampleBudget& b) {
  return nat_is_iso(distributivity_morphism(t, d), clamp(b, t.entry_cap));
}

Verdict delta_pi_condition_at(const Instance& F, const Square& sq, const SampleBudget& b) {
  return nat_is_iso(delta_pi_mate(F, sq), clamp(b, F.entry_cap));
}

namespace {

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
  return seed * 0x9e3779b97f4a7c15ULL + salt;
}

// Every map between sets of sizes in [0, n], with nonempty codomain unless the
// domain is empty too.
template <class F>
void each_map_up_to(std::size_t n, F&& visit) {
  for (std::size_t b = 0; b <= n; ++b)
    for (std::size_t a = 0; a <= n; ++a) {
      if (b == 0 && a > 0) continue;
      for (const auto& f : enumerate_maps(FinSet(a), FinSet(b))) visit(f);
    }
}

Square reparameterized(Rng& rng, const Square& sq) {
  auto pi = random_permutation(rng, sq.fp.dom);
  return Square{sq.f, sq.g, compose_map(sq.fp, pi), compose_map(sq.gp, pi)};
}

json dpb_inputs(const DistPullbackResult& d) {
  return json::array({{{"f", encode(d.f)}, {"u", encode(d.u)}}});
}

}  // namespace

std::vector<Square> sample_pullback_squares(const CheckConfig& cfg) {
  std::vector<Square> out;
  if (cfg.exhaustive) {
    for (std::size_t b = 0; b <= cfg.max_size; ++b)
      for (std::size_t a = 0; a <= cfg.max_size; ++a)
        for (std::size_t c = 0; c <= cfg.max_size; ++c) {
          if (b == 0 && (a > 0 || c > 0)) continue;
          for (const auto& f : enumerate_maps(FinSet(a), FinSet(b)))
            for (const auto& g : enumerate_maps(FinSet(c), FinSet(b)))
              out.push_back(chosen_square(f, g));
        }
    return out;
  }
  Rng rng(mix(cfg.seed, 11));
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    auto B = random_set(rng, 1, std::max<std::size_t>(1, cfg.max_size));
    auto f = random_map_into(rng, B, 0, cfg.max_size);
    auto g = random_map_into(rng, B, 0, cfg.max_size);
    auto sq = chosen_square(f, g);
    // Beck data must not depend on the chosen representative of the pullback.
    if (rng.coin()) sq = reparameterized(rng, sq);
    out.push_back(sq);
  }
  return out;
}

std::vector<DistPullbackResult> sample_dpbs(const CheckConfig& cfg) {
  std::vector<DistPullbackResult> out;
  if (cfg.exhaustive) {
    each_map_up_to(cfg.max_size, [&](const FinMap& f) {
      for (std::size_t x = 0; x <= cfg.max_size; ++x) {
        if (f.dom.size == 0 && x > 0) continue;
        for (const auto& u : enumerate_maps(FinSet(x), f.dom)) out.push_back(dist_pullback(f, u));
      }
    });
    return out;
  }
  Rng rng(mix(cfg.seed, 13));
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    auto B = random_set(rng, 1, std::max<std::size_t>(1, cfg.max_size));
    auto f = random_map_into(rng, B, 1, cfg.max_size);
    auto u = random_map_into(rng, f.dom, 0, cfg.max_size);
    out.push_back(dist_pullback(f, u));
  }
  return out;
}

Report condition_check(const LaxBeckTriple& t, Condition which, const CheckConfig& cfg) {
  Report rep;
  std::string law = "condition." + condition_name(which);
  switch (which) {
    case Condition::sigma_delta:
      for (const auto& sq : sample_pullback_squares(cfg))
        record(rep, law, json::array({encode(sq)}),
               [&] { return sigma_delta_condition_at(t, sq, cfg.families); });
      break;
    case Condition::delta_tensor:
      for (const auto& sq : sample_pullback_squares(cfg))
        record(rep, law, json::array({encode(sq)}),
               [&] { return delta_tensor_condition_at(t, sq, cfg.families); });
      break;
    case Condition::sigma_tensor:
      for (const auto& d : sample_dpbs(cfg))
        record(rep, law, dpb_inputs(d),
               [&] { return distributivity_condition_at(t, d, cfg.families); });
      break;
    case Condition::beck_pair_coherence:
      rep.append(beck_pair_coherence(t.pair(), cfg));
      break;
  }
  return rep;
}

Report condition_check(const Instance& F, Condition which, const CheckConfig& cfg) {
  return condition_check(extract_beck_data(F), which, cfg);
}

Report beck_pair_coherence(const LaxBeckPair& p, const CheckConfig& cfg) {
  Report rep;
  auto budget = clamp(cfg.families, p.entry_cap);
  const auto& T = p.tensor;
  const auto& D = p.delta;
  Rng rng(mix(cfg.seed, 17));
  std::size_t hi = std::max<std::size_t>(1, cfg.max_size);

  for (std::size_t i = 0; i < cfg.samples; ++i) {
    // Horizontal: A2 --f2--> A1 --f1--> B <--g-- C.
    {
      auto B = random_set(rng, 1, hi);
      auto f1 = random_map_into(rng, B, 0, hi);
      auto f2 = random_map_into(rng, f1.dom, 0, hi);
      auto g = random_map_into(rng, B, 0, hi);
      auto right = chosen_square(f1, g);
      auto left = chosen_square(f2, right.gp);
      Square outer{compose_map(f1, f2), g, compose_map(right.fp, left.fp), left.gp};
      json in = json::array({{{"f1", encode(f1)}, {"f2", encode(f2)}, {"g", encode(g)}}});
      record(rep, "beck.horizontal", in, [&] {
        auto paste = nat_vcomp({whisker_left(D(g), T.comp(f1, f2)),
                                whisker_right(p.beck(right), T(f2)),
                                whisker_left(T(right.fp), p.beck(left)),
                                whisker_right(T.comp_inv(right.fp, left.fp), D(left.gp))});
        return nat_equal(p.beck(outer), paste, budget);
      });
    }
    // Vertical: C2 --g2--> C1 --g1--> B <--f-- A.
    {
      auto B = random_set(rng, 1, hi);
      auto g1 = random_map_into(rng, B, 0, hi);
      auto g2 = random_map_into(rng, g1.dom, 0, hi);
      auto f = random_map_into(rng, B, 0, hi);
      auto lower = chosen_square(f, g1);
      auto upper = chosen_square(lower.fp, g2);
      Square outer{f, compose_map(g1, g2), upper.fp, compose_map(lower.gp, upper.gp)};
      json in = json::array({{{"f", encode(f)}, {"g1", encode(g1)}, {"g2", encode(g2)}}});
      record(rep, "beck.vertical", in, [&] {
        auto paste = nat_vcomp({whisker_right(D.comp(g1, g2), T(f)),
                                whisker_left(D(g2), p.beck(lower)),
                                whisker_right(p.beck(upper), D(lower.gp)),
                                whisker_left(T(upper.fp), D.comp_inv(lower.gp, upper.gp))});
        return nat_equal(p.beck(outer), paste, budget);
      });
    }
    // Nullary squares: (f, id) and (id, g).
    {
      auto f = random_map_from(rng, random_set(rng, 0, hi), 1, hi);
      auto id = FinMap::identity(f.cod);
      record(rep, "beck.nullary-tensor", json::array({encode(f)}), [&] {
        return nat_equal(p.beck(Square{f, id, f, FinMap::identity(f.dom)}), nat_identity(T(f)),
                         budget);
      });
      auto g = random_map_from(rng, random_set(rng, 0, hi), 1, hi);
      auto idg = FinMap::identity(g.cod);
      record(rep, "beck.nullary-delta", json::array({encode(g)}), [&] {
        return nat_equal(p.beck(Square{idg, g, FinMap::identity(g.dom), g}), nat_identity(D(g)),
                         budget);
      });
    }
  }
  return rep;
}

Report pseudofunctor_check(const Pseudofunctor& F, std::size_t entry_cap, const CheckConfig& cfg) {
  Report rep;
  auto budget = clamp(cfg.families, entry_cap);
  Rng rng(mix(cfg.seed, 23));
  std::size_t hi = std::max<std::size_t>(1, cfg.max_size);
  std::string law = "pseudofunctor." + F.name;
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    auto f = random_map_from(rng, random_set(rng, 0, hi), 1, hi);
    auto g = random_map_from(rng, f.cod, 1, hi);
    auto h = random_map_from(rng, g.cod, 1, hi);
    json in = json::array({encode(f), encode(g), encode(h)});
    record(rep, law + ".invertible", in, [&] { return nat_is_iso(F.comp(g, f), budget); });
    record(rep, law + ".associative", in, [&] {
      auto gf = compose_map(g, f), hg = compose_map(h, g);
      if (F.contravariant)
        return nat_equal(nat_vcomp(F.comp(hg, f), whisker_left(F(f), F.comp(h, g))),
                         nat_vcomp(F.comp(h, gf), whisker_right(F.comp(g, f), F(h))), budget);
      return nat_equal(nat_vcomp(F.comp(h, gf), whisker_left(F(h), F.comp(g, f))),
                       nat_vcomp(F.comp(hg, f), whisker_right(F.comp(h, g), F(f))), budget);
    });
    auto idc = FinMap::identity(f.cod), idd = FinMap::identity(f.dom);
    record(rep, law + ".unital", in, [&] {
      auto v = nat_equal(F.comp(idc, f), nat_identity(F(f)), budget);
      if (!v.ok) return v;
      return nat_equal(F.comp(f, idd), nat_identity(F(f)), budget);
    });
  }
  return rep;
}

Report adjunction_check(const Instance& F, const CheckConfig& cfg) {
  Report rep;
  auto budget = clamp(cfg.families, F.entry_cap);
  Rng rng(mix(cfg.seed, 19));
  std::size_t hi = std::max<std::size_t>(1, cfg.max_size);
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    auto f = random_map_from(rng, random_set(rng, 0, hi), 1, hi);
    record(rep, "adjunction.sigma-delta", json::array({encode(f)}),
           [&] { return triangle_identities(F.sigma_delta(f), budget); });
    if (F.delta_pi)
      record(rep, "adjunction.delta-pi", json::array({encode(f)}),
             [&] { return triangle_identities(F.delta_pi(f), budget); });
  }
  return rep;
}

// Sub -----------------------------------------------------------------------

std::vector<Subset> SubPoset::elements() const {
  std::vector<Subset> out;
  for (std::size_t bits = 0; bits < (std::size_t{1} << carrier.size); ++bits) {
    Subset s(carrier.size);
    for (std::size_t i = 0; i < carrier.size; ++i) s[i] = (bits >> i) & 1u;
    out.push_back(std::move(s));
  }
  return out;
}

bool SubPoset::leq(const Subset& a, const Subset& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

Subset SubPoset::meet(const Subset& a, const Subset& b) {
  Subset out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] && b[i];
  return out;
}

Subset SubPoset::join(const Subset& a, const Subset& b) {
  Subset out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] || b[i];
  return out;
}

Subset sub_exists(const FinMap& f, const Subset& s) {
  Subset out(f.cod.size, false);
  for (std::size_t a = 0; a < f.dom.size; ++a)
    if (s[a]) out[f(a)] = true;
  return out;
}

Subset sub_preimage(const FinMap& f, const Subset& t) {
  Subset out(f.dom.size);
  for (std::size_t a = 0; a < f.dom.size; ++a) out[a] = t[f(a)];
  return out;
}

Subset sub_forall(const FinMap& f, const Subset& s) {
  Subset out(f.cod.size, true);
  for (std::size_t a = 0; a < f.dom.size; ++a)
    if (!s[a]) out[f(a)] = false;
  return out;
}

Family subset_family(const FinSet& x, const Subset& s) {
  std::vector<std::size_t> sizes(x.size);
  for (std::size_t i = 0; i < x.size; ++i) sizes[i] = s[i] ? 1 : 0;
  return Family::of_sizes(x, sizes);
}

Subset family_subset(const Family& x) {
  Subset out(x.index.size);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (x.size(i) > 1) throw Error("family_subset: entry " + std::to_string(i) + " has more than one element");
    out[i] = x.size(i) == 1;
  }
  return out;
}

Report sub_galois_check(std::size_t max_size) {
  Report rep;
  for (std::size_t n = 0; n <= max_size; ++n) {
    SubPoset P{FinSet(n)};
    auto els = P.elements();
    Verdict v;
    v.exhaustive = true;
    for (const auto& a : els)
      for (const auto& b : els) {
        ++v.checked;
        auto m = SubPoset::meet(a, b), j = SubPoset::join(a, b);
        bool good = SubPoset::leq(m, a) && SubPoset::leq(m, b) && SubPoset::leq(a, j) &&
                    SubPoset::leq(b, j) && (SubPoset::leq(a, b) == (m == a)) &&
                    (SubPoset::leq(a, b) == (j == b));
        if (v.ok && !good) {
          v.ok = false;
          v.witness = Witness{subset_family(P.carrier, a), 0, 0, "lattice law fails"};
        }
      }
    rep.add("sub.lattice", json::array({n}), v);
  }

  each_map_up_to(max_size, [&](const FinMap& f) {
    SubPoset A{f.dom}, B{f.cod};
    auto as = A.elements(), bs = B.elements();
    Verdict v;
    v.exhaustive = true;
    for (const auto& s : as)
      for (const auto& t : bs) {
        ++v.checked;
        bool lower = SubPoset::leq(sub_exists(f, s), t) == SubPoset::leq(s, sub_preimage(f, t));
        bool upper = SubPoset::leq(sub_preimage(f, t), s) == SubPoset::leq(t, sub_forall(f, s));
        if (v.ok && !(lower && upper)) {
          v.ok = false;
          v.witness = Witness{subset_family(f.dom, s), 0, 0,
                              lower ? "preimage -| forall fails" : "exists -| preimage fails"};
        }
      }
    rep.add("sub.galois", json::array({encode(f)}), v);
  });
  return rep;
}

}  // namespace polyspan
