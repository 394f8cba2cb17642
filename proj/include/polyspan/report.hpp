#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polyspan/document.hpp"
#include "polyspan/famcat.hpp"

namespace polyspan {

// One verdict for one law instance.
struct LawResult {
  std::string law;
  json inputs = json::array();
  bool pass = true;
  std::optional<Witness> witness;
  std::size_t checked = 0;
  std::size_t skipped = 0;  // samples beyond the size limit
  bool exhaustive = false;
  std::string note;
};

class Report {
 public:
  void add(LawResult r) { results_.push_back(std::move(r)); }
  void add(const std::string& law, json inputs, const Verdict& v, std::string note = {});
  // Records a failure that was detected as an exception (e.g. a non-invertible cell).
  void add_failure(const std::string& law, json inputs, std::string detail);
  void append(const Report& other);

  bool ok() const;
  std::size_t failures() const;
  std::size_t size() const { return results_.size(); }
  const std::vector<LawResult>& results() const { return results_; }
  const LawResult* first_failure() const;
  // Results for laws whose name starts with `prefix`.
  Report only(const std::string& prefix) const;

  // `{"law":..,"inputs":[..],"verdict":"pass"|"fail",...}`, one line each.
  std::string jsonl() const;

 private:
  std::vector<LawResult> results_;
};

json to_json(const LawResult& r);

// Runs `check`, turning a thrown Error into a failing verdict so that a broken
// construction is reported rather than aborting the whole suite.
template <class F>
void record(Report& rep, const std::string& law, json inputs, F&& check) {
  try {
    rep.add(law, inputs, check());
  } catch (const Error& e) {
    rep.add_failure(law, std::move(inputs), e.what());
  }
}

}  // namespace polyspan
