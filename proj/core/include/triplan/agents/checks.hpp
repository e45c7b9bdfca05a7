#pragma once

#include "triplan/agents/electric.hpp"
#include "triplan/agents/gas.hpp"
#include "triplan/agents/ries.hpp"
#include "triplan/caseio/case.hpp"
#include "triplan/milp/solve.hpp"

namespace triplan::agents {

// Post-solve invariant verification. Everything here is recomputed from the
// case data and the raw solution values, independent of the model rows.

struct GasCheck {
    double balance_residual = 0.0;    // nodal gas balance
    double gating_violation = 0.0;    // |flow| on candidates that were not built
    double knot_gap = 0.0;            // image error when a flow sits exactly on a knot
    bool segment_order_ok = true;     // fill chain: fill_{k+1} > 0 => sel_k = 1 => fill_k = 1
    bool compressor_logic_ok = true;  // compressor only on built candidates

    [[nodiscard]] bool ok(double tol) const {
        return balance_residual <= tol && gating_violation <= tol && knot_gap <= tol &&
               segment_order_ok && compressor_logic_ok;
    }
};
GasCheck check_gas_solution(const caseio::PlanningCase& c, const GasVars& vars,
                            const milp::Solution& sol);

struct ElecCheck {
    double kcl_residual = 0.0;      // bus balance
    double gating_violation = 0.0;  // |flow| on lines that were not built
    double slack_angle = 0.0;       // |theta| at the slack bus
    bool commitment_ok = true;      // u_t - u_{t-1} = v_t - w_t on the returned binaries
    bool minupdown_ok = true;       // rolling windows hold post hoc

    [[nodiscard]] bool ok(double tol) const {
        return kcl_residual <= tol && gating_violation <= tol && slack_angle <= tol &&
               commitment_ok && minupdown_ok;
    }
};
ElecCheck check_elec_solution(const caseio::PlanningCase& c, const ElecVars& vars,
                              const milp::Solution& sol);

struct RiesCheck {
    double carrier_residual = 0.0;     // supply-side balances
    double input_chain_residual = 0.0; // received power vs device inputs
    double soc_periodicity = 0.0;      // |SOC_1 - SOC_T|
    double rp_gating = 0.0;            // received power on unconnected sites
    bool exclusivity_ok = true;        // never charging and discharging at once

    [[nodiscard]] bool ok(double tol) const {
        return carrier_residual <= tol && input_chain_residual <= tol && soc_periodicity <= tol &&
               rp_gating <= tol && exclusivity_ok;
    }
};
RiesCheck check_ries_solution(const caseio::PlanningCase& c, const RiesVars& vars,
                              const milp::Solution& sol);

}  // namespace triplan::agents
