#ifndef GAPMOM_VERIFY_HPP
#define GAPMOM_VERIFY_HPP

#include <string>
#include <vector>

namespace gapmom {

struct VerifyOptions {
  bool quick = false;       // reduced grids
  bool perturb_q4 = false;  // fault-injection hook: offsets Q4 before the residual check
};

struct CheckResult {
  std::string name;
  double max_dev = 0;
  double tol = 0;
  bool pass = false;
  std::string detail;
};

// The full certification suite: closed forms vs quadrature, b-independence,
// representation equivalence, Pell residuals, partial-fraction sum rules,
// mapping identities, deformation limits, 2F1 cross-checks, and the
// gap-closure degenerate case.
std::vector<CheckResult> run_verification(const VerifyOptions& opts = {});

}  // namespace gapmom

#endif
