#pragma once

#include "triplan/agents/electric.hpp"
#include "triplan/agents/gas.hpp"
#include "triplan/agents/ries.hpp"

namespace triplan::coord {

enum class PlanMode { joint, distributed };

[[nodiscard]] inline const char* to_string(PlanMode m) {
    return m == PlanMode::joint ? "joint" : "distributed";
}

/// Per-stakeholder plans plus the combined cost. Costs are always plan costs
/// (investment, operation, trading); consensus terms are never included, so
/// joint and distributed totals are directly comparable.
struct CombinedPlan {
    PlanMode mode = PlanMode::joint;
    agents::GasPlan gas;
    agents::ElecPlan elec;
    agents::RiesPlan ries;
    double total_cost = 0.0;

    // Distributed runs report consensus quality; joint solves leave defaults.
    bool converged = true;
    bool stalled = false;
    int iterations = 0;
    double final_residual_gas = 0.0;
    double final_residual_elec = 0.0;

    /// Bound on how far the piecewise-linearized penalty plus the remaining
    /// transmitted/received mismatch can push the distributed total below the
    /// exact coupled optimum.
    double pwl_penalty_tolerance = 0.0;
};

[[nodiscard]] double combined_total(const CombinedPlan& p);

}  // namespace triplan::coord
