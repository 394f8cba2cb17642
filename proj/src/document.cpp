#include "polyspan/document.hpp"

namespace polyspan {

namespace {

template <class M>
const typename M::mapped_type& lookup(const M& m, const std::string& section,
                                      const std::string& name) {
  auto it = m.find(name);
  if (it == m.end()) throw DocumentError(section + "." + name, "no such entry");
  return it->second;
}

// A dangling reference is reported at the field holding it.
template <class M>
const std::string& ref(const M& m, const char* section, const std::string& name,
                       const std::string& path) {
  if (!m.count(name))
    throw DocumentError(path, "refers to missing " + std::string(section) + " entry \"" + name +
                                  "\"");
  return name;
}

// Re-raise construction failures with the path of the entry being built.
template <class F>
auto at_path(const std::string& path, F&& build) {
  try {
    return build();
  } catch (const DocumentError&) {
    throw;
  } catch (const Error& e) {
    throw DocumentError(path, e.what());
  }
}

std::string expect_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw DocumentError(path, "expected a string");
  return j.get<std::string>();
}

std::size_t expect_count(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0)
    throw DocumentError(path, "expected a non-negative integer");
  return j.get<std::size_t>();
}

const json& field(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw DocumentError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw DocumentError(path + "." + key, "missing field");
  return *it;
}

std::vector<std::size_t> count_list(const json& j, const std::string& path) {
  if (!j.is_array()) throw DocumentError(path, "expected an array");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(expect_count(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

const json& section(const json& j, const char* key) {
  static const json empty = json::object();
  auto it = j.find(key);
  if (it == j.end()) return empty;
  if (!it->is_object()) throw DocumentError(key, "expected an object");
  return *it;
}

}  // namespace

FinSet Document::set(const std::string& name) const {
  return FinSet(lookup(sets, "sets", name));
}

FinMap Document::map(const std::string& name) const {
  const auto& m = lookup(maps, "maps", name);
  std::string path = "maps." + name;
  FinSet dom = at_path(path + ".dom", [&] { return set(ref(sets, "sets", m.dom, path + ".dom")); });
  FinSet cod = at_path(path + ".cod", [&] { return set(ref(sets, "sets", m.cod, path + ".cod")); });
  if (m.table.size() != dom.size)
    throw DocumentError(path + ".table", "has " + std::to_string(m.table.size()) +
                                             " entries for a domain of size " +
                                             std::to_string(dom.size));
  for (std::size_t i = 0; i < m.table.size(); ++i)
    if (m.table[i] >= cod.size)
      throw DocumentError(path + ".table[" + std::to_string(i) + "]",
                          "value " + std::to_string(m.table[i]) + " outside codomain of size " +
                              std::to_string(cod.size));
  return FinMap(dom, cod, m.table);
}

Span Document::span(const std::string& name) const {
  const auto& s = lookup(spans, "spans", name);
  std::string path = "spans." + name;
  return at_path(path, [&] {
    return Span(at_path(path + ".left", [&] { return map(ref(maps, "maps", s.left, path + ".left")); }),
                at_path(path + ".right", [&] { return map(ref(maps, "maps", s.right, path + ".right")); }));
  });
}

Polynomial Document::polynomial(const std::string& name) const {
  const auto& p = lookup(polynomials, "polynomials", name);
  std::string path = "polynomials." + name;
  return at_path(path, [&] {
    return Polynomial(at_path(path + ".s", [&] { return map(ref(maps, "maps", p.s, path + ".s")); }),
                      at_path(path + ".p", [&] { return map(ref(maps, "maps", p.p, path + ".p")); }),
                      at_path(path + ".t", [&] { return map(ref(maps, "maps", p.t, path + ".t")); }));
  });
}

Family Document::family(const std::string& name) const {
  const auto& f = lookup(families, "families", name);
  std::string path = "families." + name;
  FinSet idx = at_path(path + ".index", [&] { return set(ref(sets, "sets", f.index, path + ".index")); });
  if (f.entries.size() != idx.size)
    throw DocumentError(path + ".entries", "has " + std::to_string(f.entries.size()) +
                                               " entries for an index of size " +
                                               std::to_string(idx.size));
  return Family::of_sizes(idx, f.entries);
}

namespace {

const std::string& role(const CellEntry& c, const std::string& path, const char* key) {
  auto it = c.roles.find(key);
  if (it == c.roles.end()) throw DocumentError(path + "." + key, "missing field");
  return it->second;
}

template <class M>
const std::string& role_ref(const M& maps, const CellEntry& c, const std::string& path,
                            const char* key) {
  return ref(maps, "maps", role(c, path, key), path + "." + key);
}

void expect_kind(const CellEntry& c, const std::string& path, const char* kind) {
  if (c.kind != kind)
    throw DocumentError(path + ".kind", "expected \"" + std::string(kind) + "\", found \"" +
                                            c.kind + "\"");
}

}  // namespace

SpanTwoCell Document::span_cell(const std::string& name) const {
  const auto& c = lookup(cells, "cells", name);
  std::string path = "cells." + name;
  expect_kind(c, path, "span");
  return at_path(path, [&] {
    return SpanTwoCell(span(ref(spans, "spans", c.src, path + ".src")),
                       span(ref(spans, "spans", c.tgt, path + ".tgt")), map(role_ref(maps, c, path, "map")));
  });
}

CartTwoCell Document::cart_cell(const std::string& name) const {
  const auto& c = lookup(cells, "cells", name);
  std::string path = "cells." + name;
  expect_kind(c, path, "cartesian");
  return at_path(path, [&] {
    return CartTwoCell(polynomial(ref(polynomials, "polynomials", c.src, path + ".src")),
                       polynomial(ref(polynomials, "polynomials", c.tgt, path + ".tgt")), map(role_ref(maps, c, path, "sigma")),
                       map(role_ref(maps, c, path, "nu")));
  });
}

GeneralTwoCell Document::general_cell(const std::string& name) const {
  const auto& c = lookup(cells, "cells", name);
  std::string path = "cells." + name;
  expect_kind(c, path, "general");
  return at_path(path, [&] {
    return GeneralTwoCell(polynomial(ref(polynomials, "polynomials", c.src, path + ".src")),
                       polynomial(ref(polynomials, "polynomials", c.tgt, path + ".tgt")), map(role_ref(maps, c, path, "e")),
                          map(role_ref(maps, c, path, "f")), map(role_ref(maps, c, path, "g")));
  });
}

std::string Document::add_set(const std::string& name, const FinSet& x) {
  auto it = sets.find(name);
  if (it != sets.end() && it->second != x.size)
    throw Error("add_set: " + name + " already names a set of another size");
  sets[name] = x.size;
  return name;
}

std::string Document::add_map(const std::string& name, const FinMap& f, const std::string& dom,
                              const std::string& cod) {
  add_set(dom, f.dom);
  add_set(cod, f.cod);
  maps[name] = MapEntry{dom, cod, f.table};
  return name;
}

bool Document::operator==(const Document& o) const { return serialize(*this) == serialize(o); }

Document parse_document(const json& j) {
  if (!j.is_object()) throw DocumentError("$", "expected a JSON object");
  Document d;
  for (const auto& [name, v] : section(j, "sets").items())
    d.sets[name] = expect_count(v, "sets." + name);
  for (const auto& [name, v] : section(j, "maps").items()) {
    std::string path = "maps." + name;
    d.maps[name] = MapEntry{expect_string(field(v, "dom", path), path + ".dom"),
                            expect_string(field(v, "cod", path), path + ".cod"),
                            count_list(field(v, "table", path), path + ".table")};
  }
  for (const auto& [name, v] : section(j, "spans").items()) {
    std::string path = "spans." + name;
    d.spans[name] = SpanEntry{expect_string(field(v, "left", path), path + ".left"),
                              expect_string(field(v, "right", path), path + ".right")};
  }
  for (const auto& [name, v] : section(j, "polynomials").items()) {
    std::string path = "polynomials." + name;
    d.polynomials[name] = PolyEntry{expect_string(field(v, "s", path), path + ".s"),
                                    expect_string(field(v, "p", path), path + ".p"),
                                    expect_string(field(v, "t", path), path + ".t")};
  }
  for (const auto& [name, v] : section(j, "families").items()) {
    std::string path = "families." + name;
    d.families[name] = FamilyEntry{expect_string(field(v, "index", path), path + ".index"),
                                   count_list(field(v, "entries", path), path + ".entries")};
  }
  for (const auto& [name, v] : section(j, "cells").items()) {
    std::string path = "cells." + name;
    CellEntry c;
    c.kind = expect_string(field(v, "kind", path), path + ".kind");
    c.src = expect_string(field(v, "src", path), path + ".src");
    c.tgt = expect_string(field(v, "tgt", path), path + ".tgt");
    std::vector<const char*> keys;
    if (c.kind == "span")
      keys = {"map"};
    else if (c.kind == "cartesian")
      keys = {"sigma", "nu"};
    else if (c.kind == "general")
      keys = {"e", "f", "g"};
    else
      throw DocumentError(path + ".kind", "unknown cell kind \"" + c.kind + "\"");
    for (const char* k : keys) c.roles[k] = expect_string(field(v, k, path), path + "." + k);
    d.cells[name] = std::move(c);
  }

  // Resolve everything once so that invalid documents fail on load.
  for (const auto& [name, m] : d.maps) d.map(name);
  for (const auto& [name, s] : d.spans) d.span(name);
  for (const auto& [name, p] : d.polynomials) d.polynomial(name);
  for (const auto& [name, f] : d.families) d.family(name);
  for (const auto& [name, c] : d.cells) {
    if (c.kind == "span")
      d.span_cell(name);
    else if (c.kind == "cartesian")
      d.cart_cell(name);
    else
      d.general_cell(name);
  }
  return d;
}

Document parse_document_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DocumentError("$", std::string("invalid JSON: ") + e.what());
  }
  return parse_document(j);
}

json serialize(const Document& d) {
  json j = json::object();
  j["sets"] = json::object();
  for (const auto& [name, n] : d.sets) j["sets"][name] = n;
  j["maps"] = json::object();
  for (const auto& [name, m] : d.maps)
    j["maps"][name] = {{"dom", m.dom}, {"cod", m.cod}, {"table", m.table}};
  if (!d.spans.empty())
    for (const auto& [name, s] : d.spans) j["spans"][name] = {{"left", s.left}, {"right", s.right}};
  if (!d.polynomials.empty())
    for (const auto& [name, p] : d.polynomials)
      j["polynomials"][name] = {{"s", p.s}, {"p", p.p}, {"t", p.t}};
  if (!d.families.empty())
    for (const auto& [name, f] : d.families)
      j["families"][name] = {{"index", f.index}, {"entries", f.entries}};
  if (!d.cells.empty())
    for (const auto& [name, c] : d.cells) {
      json e = {{"kind", c.kind}, {"src", c.src}, {"tgt", c.tgt}};
      for (const auto& [k, v] : c.roles) e[k] = v;
      j["cells"][name] = e;
    }
  return j;
}

json encode(const FinMap& f) {
  return {{"dom", f.dom.size}, {"cod", f.cod.size}, {"table", f.table}};
}

json encode(const Span& s) { return {{"left", encode(s.left)}, {"right", encode(s.right)}}; }

json encode(const Polynomial& p) {
  return {{"s", encode(p.s)}, {"p", encode(p.p)}, {"t", encode(p.t)}};
}

json encode(const Family& x) { return {{"index", x.index.size}, {"entries", x.sizes()}}; }

json encode(const Witness& w) {
  return {{"family", encode(w.family)},
          {"entry", w.entry},
          {"element", w.element},
          {"detail", w.detail}};
}

}  // namespace polyspan
