#pragma once

#include <map>
#include <string>
#include <vector>

#include "triplan/caseio/case.hpp"
#include "triplan/consensus.hpp"
#include "triplan/milp/model.hpp"
#include "triplan/milp/solve.hpp"

namespace triplan::agents {

struct RiesAdmmContext {
    const ChannelArray* lambda_gas = nullptr;  // on received gas
    const ChannelArray* ip_gas = nullptr;
    double rho_gas = 100.0;
    const ChannelArray* lambda_elec = nullptr;  // on received electricity
    const ChannelArray* ip_elec = nullptr;
    double rho_elec = 100.0;
    int quad_knots = 8;
};

struct RiesDeviceVars {
    milp::VarId built;
    std::vector<milp::VarId> input;  // [t]
};

struct RiesResVars {
    milp::VarId modules;             // integer module count
    std::vector<milp::VarId> output; // [t]
};

struct RiesEssVars {
    milp::VarId modules;  // integer module count
    std::vector<milp::VarId> charge, discharge, soc;      // [t]
    std::vector<milp::VarId> v_charge, v_discharge;       // [t]
};

/// Variables of one district, aligned with its RiesSpec catalogs.
struct RiesUnitVars {
    std::vector<RiesDeviceVars> devices;
    std::vector<RiesResVars> res;
    std::vector<RiesEssVars> ess;
    std::vector<std::vector<milp::VarId>> output;         // [carrier][t], hub outputs
    std::vector<milp::VarId> site_gas;                    // [node]
    std::vector<milp::VarId> site_elec;                   // [bus]
    std::vector<std::vector<milp::VarId>> received_gas;   // [node][t]
    std::vector<std::vector<milp::VarId>> received_elec;  // [bus][t]
};

struct RiesVars {
    std::vector<RiesUnitVars> units;  // [h]
};

[[nodiscard]] constexpr int carrier_index(caseio::Carrier c) noexcept {
    return static_cast<int>(c);
}

/// Hub block: build-gated device inputs, conversion rows producing the four
/// carrier outputs (gas-fired columns scaled by the case heating value), and
/// module-scaled renewable output caps.
void emit_hub(milp::Model& model, RiesUnitVars& unit, const caseio::RiesSpec& spec,
              double gas_mwh_per_m3, int horizon, const std::string& tag);

/// Storage block: module-scaled power and state bounds, charge/discharge
/// exclusivity, the cyclic state recursion and the periodicity pin.
void emit_ess(milp::Model& model, RiesUnitVars& unit, const caseio::RiesSpec& spec, int horizon,
              const std::string& tag);

/// Supply-side carrier balances, siting binaries with their lower bounds,
/// site-gated received power, and the input-side chains tying received power
/// to device inputs.
void emit_loads_and_siting(milp::Model& model, RiesUnitVars& unit, const caseio::RiesSpec& spec,
                           const caseio::PlanningCase& c, const std::string& tag);

RiesVars append_ries_model(milp::Model& model, const caseio::PlanningCase& c,
                           const RiesAdmmContext* admm);

struct RiesBuild {
    milp::Model model;
    RiesVars vars;
};
RiesBuild build_ries_model(const caseio::PlanningCase& c, const RiesAdmmContext* admm = nullptr);

struct RiesUnitPlan {
    std::string name;
    std::map<caseio::DeviceKind, double> device_capacity;  // built devices only
    std::map<caseio::ResKind, int> res_modules;
    std::map<caseio::EssKind, int> ess_modules;
    std::vector<int> gas_nodes;  // node ids the district connects to
    std::vector<int> buses;
    double invest_cost = 0.0;
    double siting_cost = 0.0;
    double electricity_cost = 0.0;
    double gas_cost = 0.0;
};

struct RiesPlan {
    std::vector<RiesUnitPlan> units;
    ChannelArray received_gas;   // (node, h, t)
    ChannelArray received_elec;  // (bus, h, t)
    double invest_cost = 0.0;
    double siting_cost = 0.0;
    double electricity_cost = 0.0;
    double gas_cost = 0.0;

    [[nodiscard]] double cost() const noexcept {
        return invest_cost + siting_cost + electricity_cost + gas_cost;
    }
};

RiesPlan extract_ries_plan(const caseio::PlanningCase& c, const RiesVars& vars,
                           const milp::Solution& sol);

/// Largest gas/electricity draw district h can take per period; used as the
/// site-gating big-M and the received-power bound.
double ries_gas_cap(const caseio::RiesSpec& spec);
double ries_elec_cap(const caseio::RiesSpec& spec);

}  // namespace triplan::agents
