#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "doctest.h"
#include "polyspan/document.hpp"
#include "polyspan/sample.hpp"
#include "polyspan/suites.hpp"

using namespace polyspan;

namespace {

std::string read_data(const std::string& name) {
  std::ifstream in(std::string(POLYSPAN_TEST_DATA) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string error_path(const std::string& text) {
  try {
    parse_document_text(text);
  } catch (const DocumentError& e) {
    return e.path;
  }
  return "<parsed>";
}

}  // namespace

TEST_CASE("documents round-trip through serialization") {
  auto d = parse_document_text(read_data("poly_1to1.json"));
  auto again = parse_document(serialize(d));
  CHECK(again == d);
  CHECK(serialize(again) == serialize(d));
  CHECK(encode(again.polynomial("P")) == encode(d.polynomial("P")));

  Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    auto P = random_poly(rng, random_set(rng, 1, 3), random_set(rng, 1, 3), 3, 3);
    Document doc;
    auto I = doc.add_set("I", P.source());
    auto E = doc.add_set("E", P.positions());
    auto B = doc.add_set("B", P.shapes());
    auto J = doc.add_set("J", P.target());
    doc.polynomials["P"] = PolyEntry{doc.add_map("s", P.s, E, I), doc.add_map("p", P.p, E, B),
                                     doc.add_map("t", P.t, B, J)};
    auto back = parse_document_text(serialize(doc).dump());
    CHECK(encode(back.polynomial("P")) == encode(P));
  }
}

TEST_CASE("malformed documents name the offending field") {
  auto text = read_data("poly_1to1.json");
  auto bad_table = text;
  bad_table.replace(bad_table.find("[0, 1, 1]"), 9, "[0, 1, 7]");
  CHECK(error_path(bad_table) == "maps.p1.table[2]");

  auto bad_ref = text;
  bad_ref.replace(bad_ref.find("\"left\": \"l\""), 11, "\"left\": \"nope\"");
  CHECK(error_path(bad_ref) == "spans.S.left");

  CHECK(error_path("[1, 2]") == "$");
  CHECK(error_path(R"({"sets": {"X": -1}})") == "sets.X");
}

TEST_CASE("the worked one-variable composite") {
  auto d = parse_document_text(read_data("poly_1to1.json"));
  auto QP = compose_poly(d.polynomial("Q"), d.polynomial("P"));
  std::vector<std::size_t> fib;
  for (const auto& f : fibers(QP.p)) fib.push_back(f.size());
  std::sort(fib.begin(), fib.end());
  CHECK(fib == std::vector<std::size_t>{0, 1, 2});

  auto P = d.polynomial("P");
  auto id = Polynomial::identity(P.target());
  CHECK(encode(compose_poly(id, P)) == encode(P));
  CHECK(encode(compose_poly(P, Polynomial::identity(P.source()))) == encode(P));
}

TEST_CASE("suite runs are deterministic and validated") {
  SuiteConfig cfg;
  cfg.suite = "finset";
  cfg.seed = 9;
  cfg.samples = 10;
  auto a = run_suite(cfg).jsonl();
  CHECK(a == run_suite(cfg).jsonl());
  cfg.seed = 10;
  CHECK(a != run_suite(cfg).jsonl());

  cfg.suite = "nope";
  CHECK_THROWS_AS(run_suite(cfg), ConfigError);
  cfg.suite = "finset";
  cfg.instance = "nope";
  CHECK_THROWS_AS(run_suite(cfg), ConfigError);
  cfg.instance = "family";
  cfg.samples = 0;
  CHECK_THROWS_AS(run_suite(cfg), ConfigError);
  CHECK(std::find(suite_names().begin(), suite_names().end(), "all") != suite_names().end());
}

TEST_CASE("distributivity separates the monoidal subjects") {
  SuiteConfig cfg;
  cfg.suite = "distributivity";
  cfg.samples = 10;
  cfg.instance = "monoidal-product";
  CHECK(run_suite(cfg).ok());
  cfg.instance = "monoidal-coproduct";
  auto rep = run_suite(cfg);
  REQUIRE_FALSE(rep.ok());
  auto first = rep.first_failure();
  REQUIRE(first);
  CHECK(first->witness.has_value());
}
