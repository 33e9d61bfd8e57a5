#pragma once

// Acceptance-criteria runner shared by the CLI `verify` subcommand and the
// ctest acceptance suite. Each criterion is self-contained and reports one
// pass/fail line with a short numeric summary.

#include <functional>
#include <string>
#include <vector>

namespace aztec {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyOptions {
  std::vector<int> criteria;  // empty = all
  uint64_t seed = 20240811;
};

std::vector<CriterionResult> run_acceptance(const VerifyOptions& opts = {});

}  // namespace aztec
