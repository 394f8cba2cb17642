#include "polyspan/famcat.hpp"

#include <algorithm>
#include <sstream>

namespace polyspan {

Family::Family(FinSet idx, std::vector<FinSet> e) : index(std::move(idx)), entries(std::move(e)) {
  if (entries.size() != index.size) throw Error("Family: entry count differs from index size");
}

Family Family::of_sizes(const FinSet& idx, const std::vector<std::size_t>& sizes) {
  std::vector<FinSet> e;
  e.reserve(sizes.size());
  for (auto n : sizes) e.emplace_back(n);
  return Family(idx, std::move(e));
}

std::vector<std::size_t> Family::sizes() const {
  std::vector<std::size_t> out;
  for (const auto& e : entries) out.push_back(e.size);
  return out;
}

bool Family::operator==(const Family& o) const {
  return index == o.index && entries == o.entries;
}

FamilyMap::FamilyMap(Family s, Family t, std::vector<FinMap> c)
    : src(std::move(s)), tgt(std::move(t)), components(std::move(c)) {
  if (!(src.index == tgt.index)) throw Error("FamilyMap: families over different index sets");
  if (components.size() != src.index.size) throw Error("FamilyMap: wrong number of components");
  for (std::size_t i = 0; i < components.size(); ++i)
    if (!(components[i].dom == src.entries[i]) || !(components[i].cod == tgt.entries[i]))
      throw Error("FamilyMap: component " + std::to_string(i) + " has the wrong boundary");
}

FamilyMap FamilyMap::identity(const Family& x) {
  std::vector<FinMap> c;
  for (const auto& e : x.entries) c.push_back(FinMap::identity(e));
  return FamilyMap(x, x, std::move(c));
}

bool FamilyMap::is_iso() const {
  return std::all_of(components.begin(), components.end(),
                     [](const FinMap& m) { return m.is_bijection(); });
}

FamilyMap FamilyMap::inverse() const {
  std::vector<FinMap> c;
  for (const auto& m : components) c.push_back(m.inverse());
  return FamilyMap(tgt, src, std::move(c));
}

FamilyMap compose_family_map(const FamilyMap& g, const FamilyMap& f) {
  if (!(f.tgt == g.src)) throw Error("compose_family_map: boundary mismatch");
  std::vector<FinMap> c;
  for (std::size_t i = 0; i < f.components.size(); ++i)
    c.push_back(compose_map(g.components[i], f.components[i]));
  return FamilyMap(f.src, g.tgt, std::move(c));
}

// Atoms ---------------------------------------------------------------------

const FinSet& Atom::src_index() const {
  switch (kind) {
    case AtomKind::delta:
      return f.cod;
    case AtomKind::conj:
    case AtomKind::conj_inv:
      return index;
    default:
      return f.dom;
  }
}

const FinSet& Atom::tgt_index() const {
  switch (kind) {
    case AtomKind::delta:
      return f.dom;
    case AtomKind::conj:
    case AtomKind::conj_inv:
      return index;
    default:
      return f.cod;
  }
}

// Exists along an identity is the identity on subsingleton families, which
// are the only families it is used on.
bool Atom::is_identity() const {
  if (kind == AtomKind::conj || kind == AtomKind::conj_inv) return false;
  return f.is_identity();
}

bool Atom::operator==(const Atom& o) const {
  if (kind != o.kind) return false;
  if (kind == AtomKind::conj || kind == AtomKind::conj_inv)
    return index == o.index && seed == o.seed;
  return f == o.f;
}

static FamFunctor single(Atom a) {
  FamFunctor out;
  out.src_index = a.src_index();
  out.tgt_index = a.tgt_index();
  if (!a.is_identity()) out.atoms.push_back(std::move(a));
  return out;
}

FamFunctor FamFunctor::identity(const FinSet& x) {
  FamFunctor out;
  out.src_index = x;
  out.tgt_index = x;
  return out;
}

FamFunctor FamFunctor::delta(const FinMap& f) { return single({AtomKind::delta, f, {}, 0}); }
FamFunctor FamFunctor::sigma(const FinMap& f) { return single({AtomKind::sigma, f, {}, 0}); }
FamFunctor FamFunctor::pi(const FinMap& f) { return single({AtomKind::pi, f, {}, 0}); }
FamFunctor FamFunctor::exists(const FinMap& f) { return single({AtomKind::exists, f, {}, 0}); }
FamFunctor FamFunctor::conj(const FinSet& x, std::uint64_t seed) {
  return single({AtomKind::conj, FinMap(), x, seed});
}
FamFunctor FamFunctor::conj_inv(const FinSet& x, std::uint64_t seed) {
  return single({AtomKind::conj_inv, FinMap(), x, seed});
}

FamFunctor compose(const FamFunctor& f, const FamFunctor& g) {
  if (!(g.tgt_index == f.src_index))
    throw Error("compose: " + f.describe() + " cannot follow " + g.describe());
  FamFunctor out;
  out.src_index = g.src_index;
  out.tgt_index = f.tgt_index;
  out.atoms = f.atoms;
  out.atoms.insert(out.atoms.end(), g.atoms.begin(), g.atoms.end());
  return out;
}

FamFunctor compose(std::initializer_list<FamFunctor> chain) {
  if (chain.size() == 0) throw Error("compose: empty chain");
  auto it = chain.end();
  FamFunctor out = *--it;
  while (it != chain.begin()) {
    --it;
    out = compose(*it, out);
  }
  return out;
}

std::string FamFunctor::describe() const {
  if (atoms.empty()) return "id(" + std::to_string(src_index.size) + ")";
  std::ostringstream os;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const auto& a = atoms[i];
    if (i) os << ' ';
    switch (a.kind) {
      case AtomKind::delta:
        os << "delta";
        break;
      case AtomKind::sigma:
        os << "sigma";
        break;
      case AtomKind::pi:
        os << "pi";
        break;
      case AtomKind::exists:
        os << "exists";
        break;
      case AtomKind::conj:
        os << "conj#" << a.seed;
        break;
      case AtomKind::conj_inv:
        os << "conjinv#" << a.seed;
        break;
    }
    if (a.kind == AtomKind::conj || a.kind == AtomKind::conj_inv) {
      os << '(' << a.index.size << ')';
    } else {
      os << '(';
      for (std::size_t k = 0; k < a.f.table.size(); ++k) os << (k ? "," : "") << a.f.table[k];
      os << ':' << a.f.dom.size << "->" << a.f.cod.size << ')';
    }
  }
  return os.str();
}

// Layouts ---------------------------------------------------------------------

SigmaLayout::SigmaLayout(const FinMap& f, const Family& x) {
  if (!(x.index == f.dom)) throw Error("SigmaLayout: family is not over the domain");
  fib = fibers(f);
  offset.assign(f.dom.size, 0);
  total.assign(f.cod.size, 0);
  for (std::size_t b = 0; b < fib.size(); ++b)
    for (auto a : fib[b]) {
      offset[a] = total[b];
      total[b] += x.size(a);
      if (total[b] > kMaxEntrySize) throw SizeLimit("Sigma entry exceeds the size limit");
    }
}

std::size_t SigmaLayout::encode(std::size_t a, std::size_t elem) const { return offset[a] + elem; }

std::pair<std::size_t, std::size_t> SigmaLayout::decode(std::size_t b, std::size_t idx) const {
  for (auto it = fib[b].rbegin(); it != fib[b].rend(); ++it)
    if (offset[*it] <= idx) {
      // Skip empty entries sharing the same offset.
      return {*it, idx - offset[*it]};
    }
  throw Error("SigmaLayout: index out of range");
}

PiLayout::PiLayout(const FinMap& f, const Family& x) : sizes(x.sizes()) {
  if (!(x.index == f.dom)) throw Error("PiLayout: family is not over the domain");
  fib = fibers(f);
  total.assign(f.cod.size, 1);
  for (std::size_t b = 0; b < fib.size(); ++b)
    for (auto a : fib[b]) {
      if (sizes[a] != 0 && total[b] > kMaxEntrySize / sizes[a])
        throw SizeLimit("Pi entry exceeds the size limit");
      total[b] *= sizes[a];
    }
}

std::size_t PiLayout::encode(std::size_t b, const std::vector<std::size_t>& section) const {
  if (section.size() != fib[b].size()) throw Error("PiLayout: section has the wrong length");
  std::size_t idx = 0;
  for (std::size_t k = 0; k < section.size(); ++k) idx = idx * sizes[fib[b][k]] + section[k];
  return idx;
}

std::vector<std::size_t> PiLayout::decode(std::size_t b, std::size_t idx) const {
  std::vector<std::size_t> sec(fib[b].size());
  for (std::size_t k = sec.size(); k > 0; --k) {
    std::size_t n = sizes[fib[b][k - 1]];
    sec[k - 1] = idx % n;
    idx /= n;
  }
  return sec;
}

FinMap conj_permutation(std::uint64_t seed, std::size_t entry, std::size_t size) {
  Rng rng(seed * 0x100000001b3ULL + entry * 0x9e3779b97f4a7c15ULL + size);
  return random_permutation(rng, FinSet(size));
}

// Evaluation ----------------------------------------------------------------

static Family apply_atom(const Atom& a, const Family& x) {
  if (!(x.index == a.src_index())) throw Error("eval: family is over the wrong index set");
  switch (a.kind) {
    case AtomKind::delta: {
      std::vector<FinSet> e;
      for (std::size_t i = 0; i < a.f.dom.size; ++i) e.push_back(x.entries[a.f(i)]);
      return Family(a.f.dom, std::move(e));
    }
    case AtomKind::sigma:
      return Family::of_sizes(a.f.cod, SigmaLayout(a.f, x).total);
    case AtomKind::pi:
      return Family::of_sizes(a.f.cod, PiLayout(a.f, x).total);
    case AtomKind::exists: {
      auto t = SigmaLayout(a.f, x).total;
      for (auto& v : t) v = std::min<std::size_t>(v, 1);
      return Family::of_sizes(a.f.cod, t);
    }
    case AtomKind::conj:
    case AtomKind::conj_inv:
      return x;
  }
  throw Error("eval: unknown atom");
}

static FamilyMap apply_atom(const Atom& a, const FamilyMap& m) {
  Family src = apply_atom(a, m.src);
  Family tgt = apply_atom(a, m.tgt);
  std::vector<FinMap> comps;
  switch (a.kind) {
    case AtomKind::delta:
      for (std::size_t i = 0; i < a.f.dom.size; ++i) comps.push_back(m.components[a.f(i)]);
      break;
    case AtomKind::sigma: {
      SigmaLayout ls(a.f, m.src), lt(a.f, m.tgt);
      std::vector<std::vector<std::size_t>> t(a.f.cod.size);
      for (std::size_t b = 0; b < a.f.cod.size; ++b) t[b].resize(ls.total[b]);
      for (std::size_t x = 0; x < a.f.dom.size; ++x)
        for (std::size_t k = 0; k < m.src.size(x); ++k)
          t[a.f(x)][ls.encode(x, k)] = lt.encode(x, m.components[x](k));
      for (std::size_t b = 0; b < a.f.cod.size; ++b)
        comps.emplace_back(src.entries[b], tgt.entries[b], std::move(t[b]));
      break;
    }
    case AtomKind::pi: {
      PiLayout ls(a.f, m.src), lt(a.f, m.tgt);
      for (std::size_t b = 0; b < a.f.cod.size; ++b) {
        std::vector<std::size_t> t(ls.total[b]);
        for (std::size_t idx = 0; idx < t.size(); ++idx) {
          auto sec = ls.decode(b, idx);
          for (std::size_t k = 0; k < sec.size(); ++k) sec[k] = m.components[ls.fib[b][k]](sec[k]);
          t[idx] = lt.encode(b, sec);
        }
        comps.emplace_back(src.entries[b], tgt.entries[b], std::move(t));
      }
      break;
    }
    case AtomKind::exists:
      for (std::size_t b = 0; b < a.f.cod.size; ++b)
        comps.emplace_back(src.entries[b], tgt.entries[b],
                           std::vector<std::size_t>(src.entries[b].size, 0));
      break;
    case AtomKind::conj:
    case AtomKind::conj_inv:
      for (std::size_t b = 0; b < a.index.size; ++b) {
        auto ps = conj_permutation(a.seed, b, m.src.size(b));
        auto pt = conj_permutation(a.seed, b, m.tgt.size(b));
        if (a.kind == AtomKind::conj)
          comps.push_back(compose_map(pt, compose_map(m.components[b], ps.inverse())));
        else
          comps.push_back(compose_map(pt.inverse(), compose_map(m.components[b], ps)));
      }
      break;
  }
  return FamilyMap(std::move(src), std::move(tgt), std::move(comps));
}

Family FamFunctor::eval(const Family& x) const {
  if (!(x.index == src_index)) throw Error("eval: family is over the wrong index set");
  Family cur = x;
  for (auto it = atoms.rbegin(); it != atoms.rend(); ++it) cur = apply_atom(*it, cur);
  return cur;
}

FamilyMap FamFunctor::eval(const FamilyMap& m) const {
  if (!(m.src.index == src_index)) throw Error("eval: map is over the wrong index set");
  FamilyMap cur = m;
  for (auto it = atoms.rbegin(); it != atoms.rend(); ++it) cur = apply_atom(*it, cur);
  return cur;
}

// Natural transformations ---------------------------------------------------

FamilyMap FamNatTrans::at(const Family& x) const {
  FamilyMap m = rule(x);
  if (!(m.src == src.eval(x)) || !(m.tgt == tgt.eval(x)))
    throw Error("FamNatTrans " + name + ": component has the wrong boundary");
  return m;
}

FamNatTrans nat_identity(const FamFunctor& f) {
  return FamNatTrans{f, f, [f](const Family& x) { return FamilyMap::identity(f.eval(x)); },
                     "id"};
}

FamNatTrans nat_cast(const FamFunctor& from, const FamFunctor& to) {
  if (!(from.src_index == to.src_index) || !(from.tgt_index == to.tgt_index))
    throw Error("nat_cast: functors have different boundaries");
  return FamNatTrans{from, to,
                     [from, to](const Family& x) {
                       auto a = from.eval(x);
                       if (!(a == to.eval(x)))
                         throw Error("nat_cast: " + from.describe() + " and " + to.describe() +
                                     " differ on a family");
                       return FamilyMap::identity(a);
                     },
                     "cast"};
}

FamNatTrans nat_vcomp(const FamNatTrans& beta, const FamNatTrans& alpha) {
  if (!(alpha.tgt == beta.src))
    throw Error("nat_vcomp: " + alpha.tgt.describe() + " is not " + beta.src.describe());
  return FamNatTrans{alpha.src, beta.tgt,
                     [beta, alpha](const Family& x) {
                       return compose_family_map(beta.at(x), alpha.at(x));
                     },
                     beta.name + "." + alpha.name};
}

FamNatTrans nat_vcomp(std::initializer_list<FamNatTrans> chain) {
  if (chain.size() == 0) throw Error("nat_vcomp: empty chain");
  auto it = chain.end();
  FamNatTrans out = *--it;
  while (it != chain.begin()) {
    --it;
    out = nat_vcomp(*it, out);
  }
  return out;
}

FamNatTrans whisker_left(const FamFunctor& h, const FamNatTrans& alpha) {
  if (h.is_identity()) return alpha;
  return FamNatTrans{compose(h, alpha.src), compose(h, alpha.tgt),
                     [h, alpha](const Family& x) { return h.eval(alpha.at(x)); }, alpha.name};
}

FamNatTrans whisker_right(const FamNatTrans& alpha, const FamFunctor& k) {
  if (k.is_identity()) return alpha;
  return FamNatTrans{compose(alpha.src, k), compose(alpha.tgt, k),
                     [alpha, k](const Family& x) { return alpha.at(k.eval(x)); }, alpha.name};
}

FamNatTrans whisker(const FamFunctor& h, const FamNatTrans& alpha, const FamFunctor& k) {
  return whisker_left(h, whisker_right(alpha, k));
}

FamNatTrans nat_hcomp(const FamNatTrans& beta, const FamNatTrans& alpha) {
  return nat_vcomp(whisker_right(beta, alpha.tgt), whisker_left(beta.src, alpha));
}

FamNatTrans nat_inverse(const FamNatTrans& alpha) {
  return FamNatTrans{alpha.tgt, alpha.src,
                     [alpha](const Family& x) {
                       auto m = alpha.at(x);
                       if (!m.is_iso())
                         throw Error("nat_inverse: component of " + alpha.name + " is not invertible");
                       return m.inverse();
                     },
                     alpha.name + "^-1"};
}

// Adjunctions ---------------------------------------------------------------

Adjunction family_adjunction(AdjMode mode, const FinMap& f) {
  Adjunction adj;
  switch (mode) {
    case AdjMode::sigma_delta: {
      adj.left = FamFunctor::sigma(f);
      adj.right = FamFunctor::delta(f);
      adj.unit = FamNatTrans{
          FamFunctor::identity(f.dom), compose(adj.right, adj.left),
          [f](const Family& x) {
            SigmaLayout l(f, x);
            Family tgt = compose(FamFunctor::delta(f), FamFunctor::sigma(f)).eval(x);
            std::vector<FinMap> c;
            for (std::size_t a = 0; a < f.dom.size; ++a) {
              std::vector<std::size_t> t(x.size(a));
              for (std::size_t k = 0; k < t.size(); ++k) t[k] = l.encode(a, k);
              c.emplace_back(x.entries[a], tgt.entries[a], std::move(t));
            }
            return FamilyMap(x, tgt, std::move(c));
          },
          "eta"};
      adj.counit = FamNatTrans{
          compose(adj.left, adj.right), FamFunctor::identity(f.cod),
          [f](const Family& y) {
            Family dy = FamFunctor::delta(f).eval(y);
            SigmaLayout l(f, dy);
            Family src = FamFunctor::sigma(f).eval(dy);
            std::vector<FinMap> c;
            for (std::size_t b = 0; b < f.cod.size; ++b) {
              std::vector<std::size_t> t(src.size(b));
              for (std::size_t k = 0; k < t.size(); ++k) t[k] = l.decode(b, k).second;
              c.emplace_back(src.entries[b], y.entries[b], std::move(t));
            }
            return FamilyMap(src, y, std::move(c));
          },
          "eps"};
      break;
    }
    case AdjMode::delta_pi: {
      adj.left = FamFunctor::delta(f);
      adj.right = FamFunctor::pi(f);
      adj.unit = FamNatTrans{
          FamFunctor::identity(f.cod), compose(adj.right, adj.left),
          [f](const Family& y) {
            Family dy = FamFunctor::delta(f).eval(y);
            PiLayout l(f, dy);
            Family tgt = FamFunctor::pi(f).eval(dy);
            std::vector<FinMap> c;
            for (std::size_t b = 0; b < f.cod.size; ++b) {
              std::vector<std::size_t> t(y.size(b));
              for (std::size_t k = 0; k < t.size(); ++k)
                t[k] = l.encode(b, std::vector<std::size_t>(l.fib[b].size(), k));
              c.emplace_back(y.entries[b], tgt.entries[b], std::move(t));
            }
            return FamilyMap(y, tgt, std::move(c));
          },
          "eta"};
      adj.counit = FamNatTrans{
          compose(adj.left, adj.right), FamFunctor::identity(f.dom),
          [f](const Family& x) {
            PiLayout l(f, x);
            Family src = compose(FamFunctor::delta(f), FamFunctor::pi(f)).eval(x);
            std::vector<FinMap> c;
            for (std::size_t a = 0; a < f.dom.size; ++a) {
              std::size_t b = f(a);
              auto pos = static_cast<std::size_t>(
                  std::lower_bound(l.fib[b].begin(), l.fib[b].end(), a) - l.fib[b].begin());
              std::vector<std::size_t> t(src.size(a));
              for (std::size_t k = 0; k < t.size(); ++k) t[k] = l.decode(b, k)[pos];
              c.emplace_back(src.entries[a], x.entries[a], std::move(t));
            }
            return FamilyMap(src, x, std::move(c));
          },
          "eps"};
      break;
    }
    case AdjMode::exists_delta: {
      adj.left = FamFunctor::exists(f);
      adj.right = FamFunctor::delta(f);
      auto to_zero = [](const Family& s, const Family& t) {
        std::vector<FinMap> c;
        for (std::size_t i = 0; i < s.index.size; ++i)
          c.emplace_back(s.entries[i], t.entries[i], std::vector<std::size_t>(s.size(i), 0));
        return FamilyMap(s, t, std::move(c));
      };
      adj.unit = FamNatTrans{FamFunctor::identity(f.dom), compose(adj.right, adj.left),
                             [f, to_zero](const Family& x) {
                               return to_zero(
                                   x, compose(FamFunctor::delta(f), FamFunctor::exists(f)).eval(x));
                             },
                             "eta"};
      adj.counit = FamNatTrans{compose(adj.left, adj.right), FamFunctor::identity(f.cod),
                               [f, to_zero](const Family& y) {
                                 return to_zero(
                                     compose(FamFunctor::exists(f), FamFunctor::delta(f)).eval(y), y);
                               },
                               "eps"};
      break;
    }
  }
  return adj;
}

Adjunction adjunction_identity(const FinSet& x) {
  auto id = FamFunctor::identity(x);
  return Adjunction{id, id, nat_identity(id), nat_identity(id)};
}

Adjunction adjunction_compose(const Adjunction& second, const Adjunction& first) {
  Adjunction adj;
  adj.left = compose(second.left, first.left);
  adj.right = compose(first.right, second.right);
  adj.unit = nat_vcomp(whisker(first.right, second.unit, first.left), first.unit);
  adj.counit = nat_vcomp(second.counit, whisker(second.left, first.counit, second.right));
  return adj;
}

FamNatTrans mate(const FamNatTrans& alpha, const FamFunctor& g, const FamFunctor& h,
                 const Adjunction& adj1, const Adjunction& adj2) {
  const auto& u1 = adj1.right;
  const auto& u2 = adj2.right;
  auto a = whisker_right(whisker_right(adj2.unit, g), u1);
  auto b = whisker(u2, alpha, u1);
  auto c = whisker_left(compose(u2, h), adj1.counit);
  auto out = nat_vcomp({c, b, a});
  out.name = "mate(" + alpha.name + ")";
  return out;
}

FamNatTrans mate_inverse(const FamNatTrans& beta, const FamFunctor& g, const FamFunctor& h,
                         const Adjunction& adj1, const Adjunction& adj2) {
  const auto& f1 = adj1.left;
  const auto& f2 = adj2.left;
  auto a = whisker_left(compose(f2, g), adj1.unit);
  auto b = whisker(f2, beta, f1);
  auto c = whisker_right(whisker_right(adj2.counit, h), f1);
  auto out = nat_vcomp({c, b, a});
  out.name = "mateinv(" + beta.name + ")";
  return out;
}

// Sampling and checks -------------------------------------------------------

Family random_family(Rng& rng, const FinSet& index, std::size_t max_entry) {
  std::vector<std::size_t> s(index.size);
  for (auto& v : s) v = rng.below(max_entry + 1);
  return Family::of_sizes(index, s);
}

FamilyMap random_family_map(Rng& rng, const Family& x, std::size_t max_entry) {
  std::vector<std::size_t> s(x.index.size);
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::size_t lo = x.size(i) > 0 ? 1 : 0;
    s[i] = rng.between(lo, std::max(lo, max_entry));
  }
  Family y = Family::of_sizes(x.index, s);
  std::vector<FinMap> c;
  for (std::size_t i = 0; i < s.size(); ++i) c.push_back(random_map(rng, x.entries[i], y.entries[i]));
  return FamilyMap(x, y, std::move(c));
}

std::vector<Family> sample_families(const FinSet& index, const SampleBudget& budget) {
  std::vector<Family> out;
  std::size_t radix = budget.max_entry + 1;
  std::size_t count = 1;
  bool small = true;
  for (std::size_t i = 0; i < index.size && small; ++i) {
    count *= radix;
    small = count <= budget.samples;
  }
  if (small) {
    std::vector<std::size_t> s(index.size, 0);
    for (std::size_t n = 0; n < count; ++n) {
      std::size_t v = n;
      for (std::size_t i = index.size; i > 0; --i) {
        s[i - 1] = v % radix;
        v /= radix;
      }
      out.push_back(Family::of_sizes(index, s));
    }
    return out;
  }
  Rng rng(budget.seed ^ (index.size * 0x2545f4914f6cdd1dULL));
  for (std::size_t n = 0; n < budget.samples; ++n)
    out.push_back(random_family(rng, index, budget.max_entry));
  return out;
}

static bool exhaustive_for(const FinSet& index, const SampleBudget& budget) {
  std::size_t count = 1;
  for (std::size_t i = 0; i < index.size; ++i) {
    count *= budget.max_entry + 1;
    if (count > budget.samples) return false;
  }
  return true;
}

static std::optional<Witness> first_difference(const FamilyMap& a, const FamilyMap& b,
                                               const Family& x) {
  for (std::size_t i = 0; i < a.components.size(); ++i)
    for (std::size_t k = 0; k < a.components[i].dom.size; ++k)
      if (a.components[i](k) != b.components[i](k))
        return Witness{x, i, k,
                       "component value " + std::to_string(a.components[i](k)) + " vs " +
                           std::to_string(b.components[i](k))};
  if (!(a == b)) return Witness{x, 0, 0, "components have different boundaries"};
  return std::nullopt;
}

// Runs `body` on each sampled family; families too large to evaluate are
// skipped. Stops at the first witness.
template <class Body>
Verdict over_families(const FinSet& index, const SampleBudget& budget, Body&& body) {
  Verdict v;
  v.exhaustive = exhaustive_for(index, budget);
  for (const auto& x : sample_families(index, budget)) {
    std::optional<Witness> w;
    try {
      w = body(x);
    } catch (const SizeLimit&) {
      ++v.skipped;
      continue;
    }
    ++v.checked;
    if (w) {
      v.ok = false;
      v.witness = std::move(w);
      return v;
    }
  }
  if (v.skipped) v.exhaustive = false;
  if (v.checked == 0 && v.skipped) {
    v.ok = false;
    v.witness = Witness{Family{}, 0, 0, "every sampled family exceeds the size limit"};
  }
  return v;
}

Verdict nat_equal(const FamNatTrans& a, const FamNatTrans& b, const SampleBudget& budget) {
  if (!(a.src == b.src) || !(a.tgt == b.tgt))
    throw Error("nat_equal: transformations have different boundaries (" + a.src.describe() +
                " => " + a.tgt.describe() + " vs " + b.src.describe() + " => " + b.tgt.describe() +
                ")");
  return over_families(a.src.src_index, budget,
                       [&](const Family& x) { return first_difference(a.at(x), b.at(x), x); });
}

Verdict nat_is_iso(const FamNatTrans& a, const SampleBudget& budget) {
  return over_families(a.src.src_index, budget, [&](const Family& x) -> std::optional<Witness> {
    auto m = a.at(x);
    for (std::size_t i = 0; i < m.components.size(); ++i)
      if (!m.components[i].is_bijection())
        return Witness{x, i, 0,
                       "component " + a.name + " is not a bijection: " +
                           std::to_string(m.components[i].dom.size) + " -> " +
                           std::to_string(m.components[i].cod.size)};
    return std::nullopt;
  });
}

Verdict nat_is_natural(const FamNatTrans& a, const SampleBudget& budget) {
  Rng rng(budget.seed * 31 + 7);
  auto v = over_families(a.src.src_index, budget, [&](const Family& x) {
    auto m = random_family_map(rng, x, budget.max_entry);
    auto lhs = compose_family_map(a.at(m.tgt), a.src.eval(m));
    auto rhs = compose_family_map(a.tgt.eval(m), a.at(m.src));
    auto w = first_difference(lhs, rhs, x);
    if (w) w->detail = "naturality square fails: " + w->detail;
    return w;
  });
  v.exhaustive = false;
  return v;
}

Verdict functor_laws(const FamFunctor& f, const SampleBudget& budget) {
  Rng rng(budget.seed * 17 + 3);
  auto v = over_families(f.src_index, budget, [&](const Family& x) {
    auto w = first_difference(f.eval(FamilyMap::identity(x)), FamilyMap::identity(f.eval(x)), x);
    if (w) {
      w->detail = "identity not preserved: " + w->detail;
      return w;
    }
    auto m1 = random_family_map(rng, x, budget.max_entry);
    auto m2 = random_family_map(rng, m1.tgt, budget.max_entry);
    w = first_difference(f.eval(compose_family_map(m2, m1)),
                         compose_family_map(f.eval(m2), f.eval(m1)), x);
    if (w) w->detail = "composition not preserved: " + w->detail;
    return w;
  });
  v.exhaustive = false;
  return v;
}

Verdict triangle_identities(const Adjunction& adj, const SampleBudget& budget) {
  auto left = nat_vcomp(whisker_right(adj.counit, adj.left), whisker_left(adj.left, adj.unit));
  auto v = nat_equal(left, nat_identity(adj.left), budget);
  if (!v.ok) return v;
  auto right = nat_vcomp(whisker_left(adj.right, adj.counit), whisker_right(adj.unit, adj.right));
  auto v2 = nat_equal(right, nat_identity(adj.right), budget);
  v2.checked += v.checked;
  v2.skipped += v.skipped;
  v2.exhaustive = v2.exhaustive && v.exhaustive;
  return v2;
}

// Semantics -----------------------------------------------------------------

FamFunctor eval_span_as_functor(const Span& s) {
  return compose(FamFunctor::sigma(s.right), FamFunctor::delta(s.left));
}

FamFunctor eval_poly_as_functor(const Polynomial& p) {
  return compose({FamFunctor::sigma(p.t), FamFunctor::pi(p.p), FamFunctor::delta(p.s)});
}

FamNatTrans eval_span_two_cell(const SpanTwoCell& c) {
  auto src = eval_span_as_functor(c.src);
  auto tgt = eval_span_as_functor(c.tgt);
  return FamNatTrans{
      src, tgt,
      [c, src, tgt](const Family& x) {
        Family ds = FamFunctor::delta(c.src.left).eval(x);
        Family dt = FamFunctor::delta(c.tgt.left).eval(x);
        SigmaLayout ls(c.src.right, ds), lt(c.tgt.right, dt);
        Family a = src.eval(x), b = tgt.eval(x);
        std::vector<FinMap> comps;
        for (std::size_t j = 0; j < a.index.size; ++j) {
          std::vector<std::size_t> t(a.size(j));
          for (std::size_t k = 0; k < t.size(); ++k) {
            auto [m, elem] = ls.decode(j, k);
            t[k] = lt.encode(c.apex_map(m), elem);
          }
          comps.emplace_back(a.entries[j], b.entries[j], std::move(t));
        }
        return FamilyMap(a, b, std::move(comps));
      },
      "span2"};
}

FamNatTrans eval_two_cell(const GeneralTwoCell& cell) {
  auto c = gen2_normalize(cell);
  auto src = eval_poly_as_functor(c.src);
  auto tgt = eval_poly_as_functor(c.tgt);
  auto pb = pullback(c.g, c.tgt.p);
  return FamNatTrans{
      src, tgt,
      [c, src, tgt, pb](const Family& x) {
        Family ds = FamFunctor::delta(c.src.s).eval(x);
        Family dt = FamFunctor::delta(c.tgt.s).eval(x);
        PiLayout ps(c.src.p, ds), pt(c.tgt.p, dt);
        Family ws = FamFunctor::pi(c.src.p).eval(ds);
        Family wt = FamFunctor::pi(c.tgt.p).eval(dt);
        SigmaLayout ss(c.src.t, ws), st(c.tgt.t, wt);
        Family a = src.eval(x), b = tgt.eval(x);
        std::vector<FinMap> comps;
        for (std::size_t j = 0; j < a.index.size; ++j) {
          std::vector<std::size_t> t(a.size(j));
          for (std::size_t k = 0; k < t.size(); ++k) {
            auto [shape, secidx] = ss.decode(j, k);
            auto sec = ps.decode(shape, secidx);
            std::size_t shape2 = c.g(shape);
            std::vector<std::size_t> sec2(pt.fib[shape2].size());
            for (std::size_t r = 0; r < sec2.size(); ++r) {
              std::size_t e = c.e(pb.at(shape, pt.fib[shape2][r]));
              const auto& fb = ps.fib[shape];
              auto pos = static_cast<std::size_t>(std::lower_bound(fb.begin(), fb.end(), e) - fb.begin());
              sec2[r] = sec[pos];
            }
            t[k] = st.encode(shape2, pt.encode(shape2, sec2));
          }
          comps.emplace_back(a.entries[j], b.entries[j], std::move(t));
        }
        return FamilyMap(a, b, std::move(comps));
      },
      "poly2"};
}

FamNatTrans eval_two_cell(const CartTwoCell& c) { return eval_two_cell(gen2_from_cart(c)); }

FamNatTrans poly_comparison(const Polynomial& second, const Polynomial& first) {
  auto w = compose_poly_witness(second, first);
  auto src = eval_poly_as_functor(w.poly);
  auto fp = eval_poly_as_functor(first);
  auto tgt = compose(eval_poly_as_functor(second), fp);
  const auto& P = first;
  const auto& Q = second;
  return FamNatTrans{
      src, tgt,
      [w, src, tgt, fp, P, Q](const Family& x) {
        // Layouts of Eval(P) X.
        Family dx = FamFunctor::delta(P.s).eval(x);
        PiLayout piP(P.p, dx);
        Family wp = FamFunctor::pi(P.p).eval(dx);
        SigmaLayout sigP(P.t, wp);
        Family z = fp.eval(x);
        // Layouts of Eval(Q) Eval(P) X.
        Family dz = FamFunctor::delta(Q.s).eval(z);
        PiLayout piQ(Q.p, dz);
        Family wq = FamFunctor::pi(Q.p).eval(dz);
        SigmaLayout sigQ(Q.t, wq);
        // Layouts of Eval(Q o P) X.
        Family dc = FamFunctor::delta(w.poly.s).eval(x);
        PiLayout piC(w.poly.p, dc);
        Family wc = FamFunctor::pi(w.poly.p).eval(dc);
        SigmaLayout sigC(w.poly.t, wc);

        Family a = src.eval(x), b = tgt.eval(x);
        std::vector<FinMap> comps;
        for (std::size_t k = 0; k < a.index.size; ++k) {
          std::vector<std::size_t> t(a.size(k));
          for (std::size_t idx = 0; idx < t.size(); ++idx) {
            auto [y, secidx] = sigC.decode(k, idx);
            auto sec = piC.decode(y, secidx);
            const auto& hs = piC.fib[y];
            auto sh = decode_shape(w, y);
            std::vector<std::size_t> qsec(sh.positions.size());
            for (std::size_t j = 0; j < sh.positions.size(); ++j) {
              std::size_t b1 = sh.inner[j];
              const auto& es = piP.fib[b1];
              std::vector<std::size_t> psec(es.size());
              for (std::size_t r = 0; r < es.size(); ++r) {
                std::size_t h = encode_position(w, y, sh.positions[j], es[r]);
                auto pos = static_cast<std::size_t>(std::lower_bound(hs.begin(), hs.end(), h) - hs.begin());
                psec[r] = sec[pos];
              }
              qsec[j] = sigP.encode(b1, piP.encode(b1, psec));
            }
            t[idx] = sigQ.encode(sh.outer, piQ.encode(sh.outer, qsec));
          }
          comps.emplace_back(a.entries[k], b.entries[k], std::move(t));
        }
        return FamilyMap(a, b, std::move(comps));
      },
      "comparison"};
}

}  // namespace polyspan

namespace polyspan {

FamNatTrans sigma_compositor(const FinMap& g, const FinMap& f) {
  auto src = compose(FamFunctor::sigma(g), FamFunctor::sigma(f));
  auto tgt = FamFunctor::sigma(compose_map(g, f));
  return FamNatTrans{src, tgt,
                     [g, f, src, tgt](const Family& x) {
                       SigmaLayout lf(f, x);
                       Family sx = FamFunctor::sigma(f).eval(x);
                       SigmaLayout lg(g, sx);
                       SigmaLayout lgf(compose_map(g, f), x);
                       Family a = src.eval(x), b = tgt.eval(x);
                       std::vector<FinMap> comps;
                       for (std::size_t c = 0; c < a.index.size; ++c) {
                         std::vector<std::size_t> t(a.size(c));
                         for (std::size_t k = 0; k < t.size(); ++k) {
                           auto [mid, i] = lg.decode(c, k);
                           auto [el, j] = lf.decode(mid, i);
                           t[k] = lgf.encode(el, j);
                         }
                         comps.emplace_back(a.entries[c], b.entries[c], std::move(t));
                       }
                       return FamilyMap(a, b, std::move(comps));
                     },
                     "sigma_comp"};
}

FamNatTrans pi_compositor(const FinMap& g, const FinMap& f) {
  auto src = compose(FamFunctor::pi(g), FamFunctor::pi(f));
  auto tgt = FamFunctor::pi(compose_map(g, f));
  return FamNatTrans{src, tgt,
                     [g, f, src, tgt](const Family& x) {
                       PiLayout lf(f, x);
                       Family px = FamFunctor::pi(f).eval(x);
                       PiLayout lg(g, px);
                       PiLayout lgf(compose_map(g, f), x);
                       Family a = src.eval(x), b = tgt.eval(x);
                       std::vector<FinMap> comps;
                       for (std::size_t c = 0; c < a.index.size; ++c) {
                         const auto& whole = lgf.fib[c];
                         std::vector<std::size_t> t(a.size(c));
                         for (std::size_t k = 0; k < t.size(); ++k) {
                           auto outer = lg.decode(c, k);
                           std::vector<std::size_t> sec(whole.size());
                           for (std::size_t r = 0; r < outer.size(); ++r) {
                             std::size_t mid = lg.fib[c][r];
                             auto inner = lf.decode(mid, outer[r]);
                             for (std::size_t q = 0; q < inner.size(); ++q) {
                               std::size_t el = lf.fib[mid][q];
                               auto pos = std::lower_bound(whole.begin(), whole.end(), el) - whole.begin();
                               sec[static_cast<std::size_t>(pos)] = inner[q];
                             }
                           }
                           t[k] = lgf.encode(c, sec);
                         }
                         comps.emplace_back(a.entries[c], b.entries[c], std::move(t));
                       }
                       return FamilyMap(a, b, std::move(comps));
                     },
                     "pi_comp"};
}

FamNatTrans exists_compositor(const FinMap& g, const FinMap& f) {
  auto src = compose(FamFunctor::exists(g), FamFunctor::exists(f));
  auto tgt = FamFunctor::exists(compose_map(g, f));
  return FamNatTrans{src, tgt,
                     [src, tgt](const Family& x) {
                       Family a = src.eval(x), b = tgt.eval(x);
                       std::vector<FinMap> comps;
                       for (std::size_t c = 0; c < a.index.size; ++c)
                         comps.emplace_back(a.entries[c], b.entries[c],
                                            std::vector<std::size_t>(a.size(c), 0));
                       return FamilyMap(a, b, std::move(comps));
                     },
                     "exists_comp"};
}

FamNatTrans delta_compositor(const FinMap& g, const FinMap& f) {
  auto out = nat_cast(compose(FamFunctor::delta(f), FamFunctor::delta(g)),
                      FamFunctor::delta(compose_map(g, f)));
  out.name = "delta_comp";
  return out;
}

FamNatTrans conj_iso(const FinSet& x, std::uint64_t seed) {
  auto tgt = FamFunctor::conj(x, seed);
  return FamNatTrans{FamFunctor::identity(x), tgt,
                     [seed](const Family& y) {
                       std::vector<FinMap> comps;
                       for (std::size_t i = 0; i < y.index.size; ++i)
                         comps.push_back(conj_permutation(seed, i, y.size(i)));
                       return FamilyMap(y, y, std::move(comps));
                     },
                     "rho"};
}

}  // namespace polyspan
