#pragma once

#include <cstdint>
#include <vector>

#include "triplan/milp/model.hpp"
#include "triplan/milp/solve.hpp"

namespace triplan::oracle {

/// Result of exhaustive enumeration over all integer assignments.
struct OracleResult {
    milp::SolveStatus status = milp::SolveStatus::infeasible;
    double objective = 0.0;
    std::vector<double> values;  // best full point (integers plus inner LP values)
    std::vector<milp::VarId> integer_vars;
    std::vector<double> best_assignment;            // aligned with integer_vars
    std::vector<milp::SolveStatus> inner_status;    // per enumerated assignment
    std::int64_t assignments_tried = 0;
};

/// Brute-force MIP solve: fixes every integer assignment in lexicographic
/// order and solves the continuous residual LP with a standard-form two-phase
/// simplex implemented independently of the production kernel. Refuses models
/// with more than `limit` integer variables or more than three integer values
/// in any variable's range (guards exponential blowup).
OracleResult enumerate_mip(const milp::Model& model, int limit = 12);

struct CompareVerdict {
    bool pass = false;
    double objective_delta = 0.0;
    double worst_violation_a = 0.0;
    double worst_violation_b = 0.0;
};

/// Pass iff the two solves agree: both infeasible, or both optimal with
/// |objective difference| <= tol. Also reports each point's worst constraint
/// residual against the model.
CompareVerdict compare_solutions(const milp::Model& model, const milp::Solution& a,
                                 const OracleResult& b, double tol);
CompareVerdict compare_solutions(const milp::Model& model, const milp::Solution& a,
                                 const milp::Solution& b, double tol);

}  // namespace triplan::oracle
