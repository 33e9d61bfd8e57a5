#include "aztec/verify.hpp"

namespace aztec {

std::vector<CriterionResult> run_acceptance(const VerifyOptions& opts) {
  (void)opts;
  return {};
}

}  // namespace aztec
