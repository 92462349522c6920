#pragma once

#include <string>
#include <vector>

namespace mergepath::cli {

struct Check {
  std::string name;
  bool pass = true;
  std::string detail;
};

// Outcome of one verification suite. Each suite backs one acceptance criterion
// and carries its own runtime budget.
struct SuiteResult {
  std::string name;
  int criterion = 0;
  std::string title;
  std::vector<Check> checks;
  std::vector<std::string> reports;  // reported, not asserted
  double seconds = 0.0;
  double budget_seconds = 0.0;

  bool checks_pass() const;
  bool within_budget() const { return seconds < budget_seconds; }
  bool pass() const { return checks_pass() && within_budget(); }
};

// Suite names in criterion order (without "all").
const std::vector<std::string>& suite_names();
bool has_suite(const std::string& name);

// Throws std::out_of_range for unknown names.
SuiteResult run_suite(const std::string& name);

}  // namespace mergepath::cli
