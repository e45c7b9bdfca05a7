#pragma once

#include <span>
#include <string>
#include <vector>

#include "triplan/caseio/case.hpp"
#include "triplan/consensus.hpp"
#include "triplan/milp/model.hpp"
#include "triplan/milp/solve.hpp"

namespace triplan::agents {

struct ElecAdmmContext {
    const ChannelArray* lambda = nullptr;  // on transmitted electricity
    const ChannelArray* ip = nullptr;
    double rho = 100.0;
    int quad_knots = 8;
};

struct GenVars {
    std::vector<milp::VarId> output;    // [t]
    std::vector<milp::VarId> on;        // [t]
    std::vector<milp::VarId> startup;   // [t], index 0 unused (no history)
    std::vector<milp::VarId> shutdown;  // [t], index 0 unused
};

struct LineVars {
    bool candidate = false;
    milp::VarId build;  // invalid for existing lines
    std::vector<milp::VarId> flow;  // [t]
};

struct ElecVars {
    std::vector<GenVars> generators;
    std::vector<std::vector<milp::VarId>> angle;  // [bus][t]
    std::vector<LineVars> lines;                  // existing lines, then candidates
    std::vector<std::vector<std::vector<milp::VarId>>> transmitted;  // [bus][h][t]
};

/// Commitment block for one generator: gated output bounds, ramps, minimum
/// up/down rolling windows, state transition and start/stop exclusivity.
/// Transition rows start at the second period; there is no commitment history.
GenVars emit_unit_commitment(milp::Model& model, const caseio::Generator& g, int horizon);

/// DC flow for one line; candidates get the big-M form with M = 2*pi/x and
/// build-gated flow bounds.
LineVars emit_dc_flow(milp::Model& model, const caseio::Line& line, bool is_candidate, int horizon,
                      std::span<const milp::VarId> theta_from,
                      std::span<const milp::VarId> theta_to, const std::string& prefix);

struct ElecBuild {
    milp::Model model;
    ElecVars vars;
};

ElecVars append_electric_model(milp::Model& model, const caseio::PlanningCase& c,
                               const ElecAdmmContext* admm);
ElecBuild build_electric_model(const caseio::PlanningCase& c, const ElecAdmmContext* admm = nullptr);

struct ElecPlan {
    std::vector<int> built_lines;  // candidate line ids chosen for investment
    std::vector<std::vector<int>> commitment;     // [gen][t]
    std::vector<std::vector<double>> dispatch;    // [gen][t]
    ChannelArray transmitted;
    double invest_cost = 0.0;
    double operating_cost = 0.0;

    [[nodiscard]] double cost() const noexcept { return invest_cost + operating_cost; }
};

ElecPlan extract_elec_plan(const caseio::PlanningCase& c, const ElecVars& vars,
                           const milp::Solution& sol);

}  // namespace triplan::agents
