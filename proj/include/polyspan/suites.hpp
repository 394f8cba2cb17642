#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polyspan/report.hpp"

namespace polyspan {

// Thrown for unknown suite or instance names and out-of-range budgets.
struct ConfigError : Error {
  using Error::Error;
};

struct SuiteConfig {
  std::string suite = "all";
  std::string instance = "family";
  std::uint64_t seed = 1;
  std::size_t max_size = 3;
  std::size_t samples = 30;
};

// finset, span, poly-cart, poly-general, mates, beck, distributivity,
// generic-reduction, icons, all.
std::vector<std::string> suite_names();

// Throws ConfigError on a bad configuration. Deterministic: the same config
// gives the same report, in the same order.
Report run_suite(const SuiteConfig& cfg);

}  // namespace polyspan
