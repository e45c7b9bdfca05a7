#pragma once

#include <string>
#include <vector>

namespace triplan::report {

/// Command-line entry point. Verbs:
///   case validate <file>
///   plan joint --case F [--out D]
///   plan admm  --case F [--rho-gn R --rho-en R --rho-ehg R --rho-ehe R]
///              [--eps-g E --eps-e E] [--max-iters N] [--quad-knots K] [--out D]
///   plan sweep --case F [--rho-grid 0.1,1,10,100,200] --out D
///   plan oracle --case F
/// Exit codes: 0 success, 1 infeasible / non-converged / failed checks,
/// 2 usage or IO error.
int run_cli(const std::vector<std::string>& args);

}  // namespace triplan::report
