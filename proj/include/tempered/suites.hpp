#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tempered/report.hpp"
#include "tempered/serialize.hpp"
#include "tempered/types.hpp"

namespace tempered {

struct SuiteOptions {
  int n_max = 8;                     // nu_n exactness runs n = 1..n_max
  int m_max = 6;                     // omega blocks checked individually
  std::optional<double> grid_step;   // sup-search grid step override
  std::optional<Window> window;      // sup-search window override
  std::uint64_t seed = 0;
  Budgets budgets;
};

struct SuiteReport {
  std::string name;
  ClaimReport claims;
  std::vector<std::string> errors;   // exceptions caught while running
  bool budget_exceeded = false;
  double runtime_seconds = 0.0;      // not serialized, so reports stay reproducible
  Budgets budgets;

  bool pass() const { return !budget_exceeded && errors.empty() && claims.all_pass(); }
  // 0 pass, 1 verification failure, 3 budget exceeded
  int exit_code() const;
};

const std::vector<std::string>& suite_names();  // without "all"

// Throws std::invalid_argument for an unknown name.
SuiteReport run_suite(const std::string& name, const SuiteOptions& options = {});

Json to_json(const SuiteReport& report);

}  // namespace tempered
