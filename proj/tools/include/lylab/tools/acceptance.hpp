#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace lylab::tools {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
  double budget_seconds = 0;  // runtime ceiling, 0 = none
};

struct AcceptanceOptions {
  int jobs = 1;
  std::uint64_t seed = 0x1ee7a9;
  std::vector<int> only;        // empty = all criteria
  double critical_beta = 0.4406868;  // user-supplied 2D value for the delta probe
};

inline constexpr int kCriteria = 13;

CriterionResult run_criterion(int id, const AcceptanceOptions& options);
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);

// "[PASS] 01 circle-theorem  12.3s  detail"
std::string format_line(const CriterionResult& r);
nlohmann::json to_json(const std::vector<CriterionResult>& results);

}  // namespace lylab::tools
