// polyspan: compose and evaluate spans and polynomials, run verification suites.
//
// Exit codes: 0 success, 1 a verification failure, 2 bad input or configuration.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "polyspan/document.hpp"
#include "polyspan/suites.hpp"

using namespace polyspan;

namespace {

constexpr int kFail = 1;
constexpr int kInput = 2;

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw DocumentError("--in", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw DocumentError("--out", "cannot write " + path);
  out << text;
}

// Names of the sets a document map runs between.
const MapEntry& entry(const Document& d, const std::string& map) { return d.maps.at(map); }

struct DotGraph {
  std::ostringstream body;

  void node(const std::string& n) { body << "  \"" << n << "\";\n"; }
  void edge(const std::string& a, const std::string& b, const std::string& label) {
    body << "  \"" << a << "\" -> \"" << b << "\" [label=\"" << label << "\"];\n";
  }
  void region(const std::string& id, const std::string& label,
              const std::vector<std::string>& nodes) {
    body << "  subgraph cluster_" << id << " {\n    label=\"" << label << "\";\n    style=dashed;\n";
    for (const auto& n : nodes) body << "    \"" << n << "\";\n";
    body << "  }\n";
  }
  std::string str(const std::string& name) const {
    return "digraph \"" + name + "\" {\n  rankdir=LR;\n" + body.str() + "}\n";
  }
};

std::string sized(const std::string& name, std::size_t n) {
  return name + " (" + std::to_string(n) + ")";
}

int cmd_compose(const std::string& in, const std::string& out, const std::string& dot,
                const std::string& first, const std::string& second, const std::string& kind,
                const std::string& name) {
  auto doc = parse_document_text(read_input(in));
  DotGraph g;
  if (kind == "span") {
    auto p = doc.span(first);
    auto q = doc.span(second);
    if (!(p.target() == q.source()))
      throw DocumentError("spans." + second, "source does not match the target of " + first);
    auto w = compose_span_witness(q, p);
    auto X = entry(doc, doc.spans.at(first).left).cod;
    auto Z = entry(doc, doc.spans.at(second).right).cod;
    auto apex = name + ".apex";
    doc.spans[name] = SpanEntry{doc.add_map(name + ".left", w.span.left, apex, X),
                                doc.add_map(name + ".right", w.span.right, apex, Z)};
    doc.add_map(name + ".pb.proj1", w.pb.proj1, apex, entry(doc, doc.spans.at(first).left).dom);
    doc.add_map(name + ".pb.proj2", w.pb.proj2, apex, entry(doc, doc.spans.at(second).left).dom);

    auto Y = entry(doc, doc.spans.at(first).right).cod;
    auto M1 = entry(doc, doc.spans.at(first).left).dom;
    auto M2 = entry(doc, doc.spans.at(second).left).dom;
    auto P = sized(apex, w.pb.apex.size);
    g.edge(M1, X, "left");
    g.edge(M1, Y, "right");
    g.edge(M2, Y, "left");
    g.edge(M2, Z, "right");
    g.edge(P, M1, "proj1");
    g.edge(P, M2, "proj2");
    g.region("pb", "pb", {P, M1, M2, Y});
  } else if (kind == "poly") {
    auto P = doc.polynomial(first);
    auto Q = doc.polynomial(second);
    if (!(P.target() == Q.source()))
      throw DocumentError("polynomials." + second,
                          "source does not match the target of " + first);
    auto w = compose_poly_witness(Q, P);
    const auto& pe = doc.polynomials.at(first);
    const auto& qe = doc.polynomials.at(second);
    auto I = entry(doc, pe.s).cod, E1 = entry(doc, pe.s).dom, B1 = entry(doc, pe.t).dom;
    auto J = entry(doc, pe.t).cod, E2 = entry(doc, qe.s).dom, B2 = entry(doc, qe.t).dom;
    auto K = entry(doc, qe.t).cod;
    auto D = name + ".D", T = name + ".T", Y = name + ".Y", H = name + ".H";
    doc.polynomials[name] = PolyEntry{doc.add_map(name + ".s", w.poly.s, H, I),
                                      doc.add_map(name + ".p", w.poly.p, H, Y),
                                      doc.add_map(name + ".t", w.poly.t, Y, K)};
    doc.add_map(name + ".d1", w.D.proj1, D, B1);
    doc.add_map(name + ".d2", w.D.proj2, D, E2);
    doc.add_map(name + ".dpb.p", w.dpb.p, T, D);
    doc.add_map(name + ".dpb.q", w.dpb.q, T, Y);
    doc.add_map(name + ".dpb.r", w.dpb.r, Y, B2);
    doc.add_map(name + ".h1", w.H.proj1, H, E1);
    doc.add_map(name + ".h2", w.H.proj2, H, T);

    auto n = [&](const std::string& s, const FinSet& x) { return sized(s, x.size); };
    auto nD = n(D, w.D.apex), nT = n(T, w.dpb.T), nY = n(Y, w.dpb.Y), nH = n(H, w.H.apex);
    g.edge(E1, I, "s1");
    g.edge(E1, B1, "p1");
    g.edge(B1, J, "t1");
    g.edge(E2, J, "s2");
    g.edge(E2, B2, "p2");
    g.edge(B2, K, "t2");
    g.edge(nD, B1, "d1");
    g.edge(nD, E2, "d2");
    g.edge(nT, nD, "p");
    g.edge(nT, nY, "q");
    g.edge(nY, B2, "r");
    g.edge(nH, E1, "h1");
    g.edge(nH, nT, "h2");
    g.region("pb_D", "pb", {nD, B1, E2, J});
    g.region("dpb", "dpb", {nT, nY, nD, E2, B2});
    g.region("pb_H", "pb", {nH, E1, nT, B1});
  } else {
    throw DocumentError("--kind", "expected span or poly, found \"" + kind + "\"");
  }
  write_output(out, serialize(doc).dump(2) + "\n");
  if (!dot.empty()) {
    std::ofstream f(dot);
    if (!f) throw DocumentError("--emit-dot", "cannot write " + dot);
    f << g.str(name);
  }
  return 0;
}

// Labels follow the element order of the evaluation: shapes ascending, then
// sections in mixed radix with the first position most significant.
json poly_labels(const Polynomial& P, const Family& x) {
  json out = json::array();
  for (std::size_t j = 0; j < P.target().size; ++j) {
    json entry = json::array();
    for (std::size_t b = 0; b < P.shapes().size; ++b) {
      if (P.t(b) != j) continue;
      std::vector<std::size_t> pos;
      for (std::size_t e = 0; e < P.positions().size; ++e)
        if (P.p(e) == b) pos.push_back(e);
      std::vector<std::size_t> sec(pos.size(), 0);
      bool empty = false;
      for (auto e : pos) empty = empty || x.size(P.s(e)) == 0;
      while (!empty) {
        std::string label = std::to_string(b) + ":(";
        for (std::size_t k = 0; k < sec.size(); ++k) label += (k ? "," : "") + std::to_string(sec[k]);
        entry.push_back(label + ")");
        std::size_t k = sec.size();
        while (k > 0) {
          --k;
          if (++sec[k] < x.size(P.s(pos[k]))) break;
          sec[k] = 0;
          if (k == 0) empty = true;
        }
        if (sec.empty()) break;
      }
    }
    out.push_back(entry);
  }
  return out;
}

json span_labels(const Span& s, const Family& x) {
  json out = json::array();
  for (std::size_t y = 0; y < s.target().size; ++y) {
    json entry = json::array();
    for (std::size_t m = 0; m < s.apex().size; ++m)
      if (s.right(m) == y)
        for (std::size_t i = 0; i < x.size(s.left(m)); ++i)
          entry.push_back(std::to_string(m) + ":" + std::to_string(i));
    out.push_back(entry);
  }
  return out;
}

int cmd_eval(const std::string& in, const std::string& out, const std::string& target,
             const std::string& family, const std::string& name) {
  auto doc = parse_document_text(read_input(in));
  auto x = doc.family(family);
  const auto& fam_index = doc.families.at(family).index;
  Family y;
  json labels;
  std::string index;
  if (doc.polynomials.count(target)) {
    auto P = doc.polynomial(target);
    if (!(P.source() == x.index) || entry(doc, doc.polynomials.at(target).s).cod != fam_index)
      throw DocumentError("families." + family + ".index",
                          "does not match the source of " + target);
    y = eval_poly_as_functor(P).eval(x);
    labels = poly_labels(P, x);
    index = entry(doc, doc.polynomials.at(target).t).cod;
  } else if (doc.spans.count(target)) {
    auto s = doc.span(target);
    if (!(s.source() == x.index) || entry(doc, doc.spans.at(target).left).cod != fam_index)
      throw DocumentError("families." + family + ".index",
                          "does not match the source of " + target);
    y = eval_span_as_functor(s).eval(x);
    labels = span_labels(s, x);
    index = entry(doc, doc.spans.at(target).right).cod;
  } else {
    throw DocumentError(target, "no span or polynomial of that name");
  }
  doc.families[name] = FamilyEntry{index, y.sizes()};
  auto j = serialize(doc);
  j["labels"] = {{name, labels}};
  write_output(out, j.dump(2) + "\n");
  return 0;
}

int cmd_verify(const SuiteConfig& cfg, const std::string& out) {
  auto rep = run_suite(cfg);
  write_output(out, rep.jsonl());
  std::cerr << cfg.suite << " on " << cfg.instance << ": " << rep.size() << " checks, "
            << rep.failures() << " failed\n";
  if (const auto* f = rep.first_failure()) {
    std::cerr << "first failure: " << to_json(*f).dump() << "\n";
    return kFail;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spans and polynomials over finite sets: composition, evaluation, verification"};
  app.require_subcommand(1);

  std::string in, out, dot, first, second, kind = "poly", name = "composite";
  auto* compose = app.add_subcommand("compose", "compose two spans or polynomials");
  compose->add_option("--in", in, "input document (default stdin)");
  compose->add_option("--out", out, "output document (default stdout)");
  compose->add_option("--first", first, "applied first")->required();
  compose->add_option("--second", second, "applied second")->required();
  compose->add_option("--kind", kind, "span or poly");
  compose->add_option("--name", name, "name of the composite");
  compose->add_option("--emit-dot", dot, "write the composition witness as DOT");

  std::string target, family, result = "result";
  auto* eval = app.add_subcommand("eval", "evaluate a span or polynomial at a family");
  eval->add_option("--in", in, "input document (default stdin)");
  eval->add_option("--out", out, "output document (default stdout)");
  eval->add_option("--target", target, "span or polynomial")->required();
  eval->add_option("--family", family, "family over its source")->required();
  eval->add_option("--name", result, "name of the resulting family");

  SuiteConfig cfg;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", cfg.suite, "suite name, or all");
  verify->add_option("--instance", cfg.instance, "family, sub, monoidal-product, monoidal-coproduct");
  verify->add_option("--seed", cfg.seed);
  verify->add_option("--max-size", cfg.max_size);
  verify->add_option("--samples", cfg.samples);
  verify->add_option("--out", out, "JSON-lines report (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInput;
  }

  try {
    if (*compose) return cmd_compose(in, out, dot, first, second, kind, name);
    if (*eval) return cmd_eval(in, out, target, family, result);
    return cmd_verify(cfg, out);
  } catch (const DocumentError& e) {
    std::cerr << "input error at " << e.what() << "\n";
    return kInput;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
}
