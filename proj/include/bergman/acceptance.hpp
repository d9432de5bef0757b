// The acceptance suite: eleven numbered checks with PASS/FAIL lines.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bergman/io.hpp"

namespace bergman {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  Json data = Json::object();
  double seconds = 0.0;
};

struct AcceptanceOptions {
  std::uint64_t seed = 20240607;
};

inline constexpr int kCriterionCount = 11;

const char* criterion_name(int id);

/// Runs one check; exceptions are caught and reported as failures.
CriterionResult run_criterion(int id, const AcceptanceOptions& opts = {});
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids, const AcceptanceOptions& opts = {});

/// "PASS  3 cesaro-law  ..." (timing is left out so the line is reproducible).
std::string format_line(const CriterionResult& r);

}  // namespace bergman
