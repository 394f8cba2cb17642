#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "polyspan/famcat.hpp"
#include "polyspan/finset.hpp"
#include "polyspan/poly.hpp"
#include "polyspan/span.hpp"

namespace polyspan {

using nlohmann::json;

// Raised on malformed or unresolvable documents; `path` names the offending
// field, e.g. "maps.f.table[2]".
struct DocumentError : Error {
  DocumentError(std::string p, const std::string& what)
      : Error(p + ": " + what), path(std::move(p)) {}
  std::string path;
};

struct MapEntry {
  std::string dom;
  std::string cod;
  std::vector<std::size_t> table;
};

struct SpanEntry {
  std::string left;
  std::string right;
};

struct PolyEntry {
  std::string s;
  std::string p;
  std::string t;
};

struct FamilyEntry {
  std::string index;
  std::vector<std::size_t> entries;
};

// kind "span": roles {map}; "cartesian": {sigma, nu}; "general": {e, f, g}.
struct CellEntry {
  std::string kind;
  std::string src;
  std::string tgt;
  std::map<std::string, std::string> roles;
};

// A self-contained bundle of named objects. Sets are referenced by name from
// maps and families; maps by name from spans, polynomials and cells.
struct Document {
  std::map<std::string, std::size_t> sets;
  std::map<std::string, MapEntry> maps;
  std::map<std::string, SpanEntry> spans;
  std::map<std::string, PolyEntry> polynomials;
  std::map<std::string, FamilyEntry> families;
  std::map<std::string, CellEntry> cells;

  FinSet set(const std::string& name) const;
  FinMap map(const std::string& name) const;
  Span span(const std::string& name) const;
  Polynomial polynomial(const std::string& name) const;
  Family family(const std::string& name) const;
  SpanTwoCell span_cell(const std::string& name) const;
  CartTwoCell cart_cell(const std::string& name) const;
  GeneralTwoCell general_cell(const std::string& name) const;

  // Adds (or reuses) entries describing a value and returns its name.
  std::string add_set(const std::string& name, const FinSet& x);
  std::string add_map(const std::string& name, const FinMap& f, const std::string& dom,
                      const std::string& cod);

  bool operator==(const Document& o) const;
};

// Parses and checks that every reference resolves and every value is valid.
Document parse_document(const json& j);
Document parse_document_text(const std::string& text);
json serialize(const Document& d);

// Anonymous encodings used in reports, where sets are given by their sizes.
json encode(const FinMap& f);
json encode(const Span& s);
json encode(const Polynomial& p);
json encode(const Family& x);
json encode(const Witness& w);

}  // namespace polyspan
