#include "polyspan/finset.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace polyspan {

FinSet::FinSet(std::size_t n, std::vector<std::string> names) : size(n), labels(std::move(names)) {
  if (!labels.empty()) {
    if (labels.size() != size) throw Error("FinSet: label count differs from size");
    std::set<std::string> seen(labels.begin(), labels.end());
    if (seen.size() != labels.size()) throw Error("FinSet: labels are not distinct");
  }
}

FinMap::FinMap(FinSet d, FinSet c, std::vector<std::size_t> t)
    : dom(std::move(d)), cod(std::move(c)), table(std::move(t)) {
  if (table.size() != dom.size) throw Error("FinMap: table length differs from domain size");
  for (std::size_t i = 0; i < table.size(); ++i)
    if (table[i] >= cod.size)
      throw Error("FinMap: table[" + std::to_string(i) + "] = " + std::to_string(table[i]) +
                  " out of range for codomain of size " + std::to_string(cod.size));
}

FinMap FinMap::identity(const FinSet& x) {
  std::vector<std::size_t> t(x.size);
  std::iota(t.begin(), t.end(), std::size_t{0});
  return FinMap(x, x, std::move(t));
}

FinMap FinMap::constant(const FinSet& d, const FinSet& c, std::size_t value) {
  return FinMap(d, c, std::vector<std::size_t>(d.size, value));
}

bool FinMap::is_identity() const {
  if (!(dom == cod)) return false;
  for (std::size_t i = 0; i < table.size(); ++i)
    if (table[i] != i) return false;
  return true;
}

bool FinMap::is_injective() const {
  std::vector<char> hit(cod.size, 0);
  for (auto v : table) {
    if (hit[v]) return false;
    hit[v] = 1;
  }
  return true;
}

bool FinMap::is_surjective() const {
  std::vector<char> hit(cod.size, 0);
  for (auto v : table) hit[v] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

FinMap FinMap::inverse() const {
  if (!is_bijection()) throw Error("FinMap::inverse: not a bijection");
  std::vector<std::size_t> t(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) t[table[i]] = i;
  return FinMap(cod, dom, std::move(t));
}

FinMap compose_map(const FinMap& g, const FinMap& f) {
  if (!(f.cod == g.dom))
    throw Error("compose_map: codomain of size " + std::to_string(f.cod.size) +
                " does not match domain of size " + std::to_string(g.dom.size));
  std::vector<std::size_t> t(f.dom.size);
  for (std::size_t x = 0; x < t.size(); ++x) t[x] = g.table[f.table[x]];
  return FinMap(f.dom, g.cod, std::move(t));
}

Fiber fiber(const FinMap& f, std::size_t b) {
  if (b >= f.cod.size) throw Error("fiber: index out of range");
  std::vector<std::size_t> inc;
  for (std::size_t x = 0; x < f.dom.size; ++x)
    if (f.table[x] == b) inc.push_back(x);
  FinSet s(inc.size());
  return Fiber{s, FinMap(s, f.dom, std::move(inc))};
}

std::vector<std::vector<std::size_t>> fibers(const FinMap& f) {
  std::vector<std::vector<std::size_t>> out(f.cod.size);
  for (std::size_t x = 0; x < f.dom.size; ++x) out[f.table[x]].push_back(x);
  return out;
}

std::optional<std::size_t> PullbackResult::index_of(std::size_t a, std::size_t c) const {
  if (a >= f.dom.size || c >= g.dom.size) return std::nullopt;
  std::uint64_t key = static_cast<std::uint64_t>(a) * g.dom.size + c;
  auto it = std::lower_bound(keys_.begin(), keys_.end(), std::make_pair(key, std::size_t{0}));
  if (it == keys_.end() || it->first != key) return std::nullopt;
  return it->second;
}

std::size_t PullbackResult::at(std::size_t a, std::size_t c) const {
  auto i = index_of(a, c);
  if (!i) throw Error("pullback: pair does not lie over a common element");
  return *i;
}

static void index_pairs(PullbackResult& pb) {
  pb.keys_.clear();
  pb.keys_.reserve(pb.pairs.size());
  for (std::size_t i = 0; i < pb.pairs.size(); ++i)
    pb.keys_.emplace_back(
        static_cast<std::uint64_t>(pb.pairs[i].first) * pb.g.dom.size + pb.pairs[i].second, i);
  std::sort(pb.keys_.begin(), pb.keys_.end());
}

PullbackResult pullback(const FinMap& f, const FinMap& g) {
  if (!(f.cod == g.cod)) throw Error("pullback: codomains differ");
  PullbackResult pb;
  pb.f = f;
  pb.g = g;
  if (f.is_identity()) {
    for (std::size_t c = 0; c < g.dom.size; ++c) pb.pairs.emplace_back(g.table[c], c);
    pb.apex = g.dom;
    pb.proj1 = g;
    pb.proj2 = FinMap::identity(g.dom);
  } else if (g.is_identity()) {
    for (std::size_t a = 0; a < f.dom.size; ++a) pb.pairs.emplace_back(a, f.table[a]);
    pb.apex = f.dom;
    pb.proj1 = FinMap::identity(f.dom);
    pb.proj2 = f;
  } else {
    auto gf = fibers(g);
    for (std::size_t a = 0; a < f.dom.size; ++a)
      for (auto c : gf[f.table[a]]) pb.pairs.emplace_back(a, c);
    pb.apex = FinSet(pb.pairs.size());
    std::vector<std::size_t> t1, t2;
    for (auto& [a, c] : pb.pairs) {
      t1.push_back(a);
      t2.push_back(c);
    }
    pb.proj1 = FinMap(pb.apex, f.dom, std::move(t1));
    pb.proj2 = FinMap(pb.apex, g.dom, std::move(t2));
  }
  index_pairs(pb);
  return pb;
}

FinMap pullback_mediate(const PullbackResult& pb, const FinMap& u, const FinMap& v) {
  if (!(u.dom == v.dom)) throw Error("pullback_mediate: legs have different domains");
  if (!(u.cod == pb.f.dom) || !(v.cod == pb.g.dom))
    throw Error("pullback_mediate: legs do not land in the cospan");
  std::vector<std::size_t> t(u.dom.size);
  for (std::size_t x = 0; x < t.size(); ++x) {
    auto i = pb.index_of(u.table[x], v.table[x]);
    if (!i) throw Error("pullback_mediate: square does not commute");
    t[x] = *i;
  }
  return FinMap(u.dom, pb.apex, std::move(t));
}

bool is_pullback_square(const FinMap& top, const FinMap& left, const FinMap& right,
                        const FinMap& bottom) {
  if (!(top.dom == left.dom) || !(top.cod == right.dom) || !(left.cod == bottom.dom) ||
      !(right.cod == bottom.cod))
    return false;
  if (compose_map(right, top) != compose_map(bottom, left)) return false;
  auto pb = pullback(bottom, right);
  return pullback_mediate(pb, left, top).is_bijection();
}

std::optional<std::size_t> DistPullbackResult::section_index(
    std::size_t b, const std::vector<std::size_t>& section) const {
  std::vector<std::size_t> key;
  key.reserve(section.size() + 1);
  key.push_back(b);
  key.insert(key.end(), section.begin(), section.end());
  auto it = std::lower_bound(keys_.begin(), keys_.end(), std::make_pair(key, std::size_t{0}));
  if (it == keys_.end() || it->first != key) return std::nullopt;
  return it->second;
}

DistPullbackResult dist_pullback(const FinMap& f, const FinMap& u) {
  if (!(u.cod == f.dom)) throw Error("dist_pullback: u does not land in the domain of f");
  DistPullbackResult d;
  d.f = f;
  d.u = u;
  auto ffib = fibers(f);
  auto ufib = fibers(u);
  std::vector<std::size_t> rt;
  if (f.is_identity()) {
    for (std::size_t x = 0; x < u.dom.size; ++x) {
      d.sections.push_back({x});
      rt.push_back(u.table[x]);
    }
  } else {
    for (std::size_t b = 0; b < f.cod.size; ++b) {
      const auto& as = ffib[b];
      bool empty = std::any_of(as.begin(), as.end(), [&](std::size_t a) { return ufib[a].empty(); });
      if (empty) continue;
      std::vector<std::size_t> digit(as.size(), 0);
      while (true) {
        std::vector<std::size_t> sec(as.size());
        for (std::size_t k = 0; k < as.size(); ++k) sec[k] = ufib[as[k]][digit[k]];
        d.sections.push_back(std::move(sec));
        rt.push_back(b);
        std::size_t k = as.size();
        while (k > 0) {
          --k;
          if (++digit[k] < ufib[as[k]].size()) break;
          digit[k] = 0;
          if (k == 0) {
            k = as.size() + 1;
            break;
          }
        }
        if (as.empty() || k == as.size() + 1) break;
      }
    }
  }
  d.Y = FinSet(rt.size());
  d.r = FinMap(d.Y, f.cod, std::move(rt));
  d.tpb = pullback(f, d.r);
  d.T = d.tpb.apex;
  d.q = d.tpb.proj2;
  std::vector<std::size_t> pt(d.T.size);
  for (std::size_t i = 0; i < d.T.size; ++i) {
    auto [a, y] = d.tpb.pairs[i];
    const auto& as = ffib[f.table[a]];
    std::size_t pos = static_cast<std::size_t>(std::lower_bound(as.begin(), as.end(), a) - as.begin());
    pt[i] = d.sections[y][pos];
  }
  d.p = FinMap(d.T, u.dom, std::move(pt));
  for (std::size_t y = 0; y < d.sections.size(); ++y) {
    std::vector<std::size_t> key;
    key.push_back(d.r.table[y]);
    key.insert(key.end(), d.sections[y].begin(), d.sections[y].end());
    d.keys_.emplace_back(std::move(key), y);
  }
  std::sort(d.keys_.begin(), d.keys_.end());
  return d;
}

DpbMorphism dpb_factor(const DistPullbackResult& dpb, const PullbackAround& cand) {
  const auto& f = dpb.f;
  const auto& u = dpb.u;
  if (!(cand.p.cod == u.dom) || !(cand.q.dom == cand.p.dom) || !(cand.r.dom == cand.q.cod) ||
      !(cand.r.cod == f.cod))
    throw Error("dpb_factor: candidate has the wrong shape");
  FinMap up = compose_map(u, cand.p);
  if (!is_pullback_square(cand.q, up, cand.r, f))
    throw Error("dpb_factor: candidate outer rectangle is not a pullback");
  auto cpb = pullback(f, cand.r);
  FinMap med = pullback_mediate(cpb, up, cand.q);
  FinMap med_inv = med.inverse();
  auto ffib = fibers(f);
  std::vector<std::size_t> tt(cand.r.dom.size);
  for (std::size_t y = 0; y < cand.r.dom.size; ++y) {
    std::size_t b = cand.r.table[y];
    std::vector<std::size_t> sec;
    for (auto a : ffib[b]) sec.push_back(cand.p.table[med_inv.table[cpb.at(a, y)]]);
    auto idx = dpb.section_index(b, sec);
    if (!idx) throw Error("dpb_factor: section not enumerated");
    tt[y] = *idx;
  }
  FinMap t(cand.r.dom, dpb.Y, std::move(tt));
  FinMap s = pullback_mediate(dpb.tpb, up, compose_map(t, cand.q));
  return DpbMorphism{s, t};
}

std::vector<FinMap> enumerate_maps(const FinSet& dom, const FinSet& cod) {
  std::vector<FinMap> out;
  if (cod.size == 0) {
    if (dom.size == 0) out.push_back(FinMap(dom, cod, {}));
    return out;
  }
  std::vector<std::size_t> t(dom.size, 0);
  while (true) {
    out.emplace_back(dom, cod, t);
    std::size_t k = dom.size;
    while (k > 0) {
      --k;
      if (++t[k] < cod.size) break;
      t[k] = 0;
      if (k == 0) return out;
    }
    if (dom.size == 0) return out;
  }
}

std::vector<FinMap> enumerate_permutations(const FinSet& x) {
  std::vector<std::size_t> t(x.size);
  std::iota(t.begin(), t.end(), std::size_t{0});
  std::vector<FinMap> out;
  do {
    out.emplace_back(x, x, t);
  } while (std::next_permutation(t.begin(), t.end()));
  return out;
}

}  // namespace polyspan
