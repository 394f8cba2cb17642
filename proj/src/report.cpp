#include "polyspan/report.hpp"

#include <sstream>

namespace polyspan {

void Report::add(const std::string& law, json inputs, const Verdict& v, std::string note) {
  LawResult r;
  r.law = law;
  r.inputs = std::move(inputs);
  r.pass = v.ok;
  r.witness = v.witness;
  r.checked = v.checked;
  r.skipped = v.skipped;
  r.exhaustive = v.exhaustive;
  r.note = std::move(note);
  results_.push_back(std::move(r));
}

void Report::add_failure(const std::string& law, json inputs, std::string detail) {
  LawResult r;
  r.law = law;
  r.inputs = std::move(inputs);
  r.pass = false;
  r.note = std::move(detail);
  results_.push_back(std::move(r));
}

void Report::append(const Report& other) {
  results_.insert(results_.end(), other.results_.begin(), other.results_.end());
}

bool Report::ok() const { return failures() == 0; }

std::size_t Report::failures() const {
  std::size_t n = 0;
  for (const auto& r : results_) n += r.pass ? 0 : 1;
  return n;
}

const LawResult* Report::first_failure() const {
  for (const auto& r : results_)
    if (!r.pass) return &r;
  return nullptr;
}

Report Report::only(const std::string& prefix) const {
  Report out;
  for (const auto& r : results_)
    if (r.law.rfind(prefix, 0) == 0) out.add(r);
  return out;
}

json to_json(const LawResult& r) {
  json j = {{"law", r.law}, {"inputs", r.inputs}, {"verdict", r.pass ? "pass" : "fail"}};
  if (r.checked) j["checked"] = r.checked;
  if (r.skipped) j["skipped"] = r.skipped;
  if (r.exhaustive) j["exhaustive"] = true;
  if (r.witness) j["witness"] = encode(*r.witness);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

std::string Report::jsonl() const {
  std::ostringstream os;
  for (const auto& r : results_) os << to_json(r).dump() << '\n';
  return os.str();
}

}  // namespace polyspan
