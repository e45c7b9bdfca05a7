#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "triplan/milp/model.hpp"

namespace triplan::milp {

enum class SolveStatus { optimal, infeasible, unbounded, node_limit };

struct Solution {
    SolveStatus status = SolveStatus::infeasible;
    double objective = 0.0;
    std::vector<double> values;  // indexed by VarId, structural variables only

    /// Lower-bound sequence of processed branch-and-bound nodes; filled only
    /// when SolverConfig::record_bound_history is set.
    std::vector<double> bound_history;

    [[nodiscard]] bool optimal() const noexcept { return status == SolveStatus::optimal; }
};

struct SolverConfig {
    double mip_gap = 1e-6;          // absolute optimality gap at termination
    double integrality_tol = 1e-6;  // |x - round(x)| below this counts as integral
    std::int64_t max_nodes = 500000;
    bool record_bound_history = false;
    // node order: best bound, newest node on ties; branch rule: most fractional,
    // lowest VarId on ties. Both are fixed so solves are deterministic.
};

/// Solves the LP relaxation (every variable treated as continuous) with a
/// bounded-variable primal simplex. Dantzig pricing with Bland's rule engaged
/// after a degenerate stretch guards against cycling. Throws ConditioningError
/// on numerical breakdown rather than returning a wrong answer.
Solution solve_lp(const Model& model);

/// Same, with per-variable bound overrides (used by branch and bound).
Solution solve_lp(const Model& model, std::span<const double> lower, std::span<const double> upper);

/// Best-bound branch and bound over solve_lp. Optimal solutions report integer
/// variables rounded to the nearest integer and the objective recomputed from
/// the reported values.
Solution solve_mip(const Model& model, const SolverConfig& config = {});

}  // namespace triplan::milp
