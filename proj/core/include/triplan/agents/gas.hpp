#pragma once

#include <span>
#include <string>
#include <vector>

#include "triplan/agents/pwl.hpp"
#include "triplan/caseio/case.hpp"
#include "triplan/consensus.hpp"
#include "triplan/milp/model.hpp"
#include "triplan/milp/solve.hpp"

namespace triplan::agents {

/// Consensus terms for the gas agent's augmented Lagrangian; null context
/// means the joint-objective slice (no multiplier or penalty terms).
struct GasAdmmContext {
    const ChannelArray* lambda = nullptr;  // on transmitted gas
    const ChannelArray* ip = nullptr;
    double rho = 100.0;
    int quad_knots = 8;
};

struct GasPipeVars {
    bool candidate = false;
    milp::VarId build;       // invalid for existing pipes
    milp::VarId compressor;  // invalid when a compressor is not allowed
    std::vector<milp::VarId> flow;                   // [t]
    std::vector<std::vector<milp::VarId>> fill;      // [t][seg]
    std::vector<std::vector<milp::VarId>> selector;  // [t][seg-1]
    PwlGrid grid;
};

struct GasVars {
    std::vector<std::vector<milp::VarId>> source_output;  // [source][t]
    std::vector<std::vector<milp::VarId>> sq_pressure;    // [node][t], the I variables
    std::vector<GasPipeVars> pipes;                       // existing pipes, then candidates
    std::vector<std::vector<std::vector<milp::VarId>>> transmitted;  // [node][h][t]
};

/// Creates the source output variables with their operating bounds and adds
/// the inter-period ramp rows (none when T = 1).
std::vector<milp::VarId> emit_source_constraints(milp::Model& model, const caseio::GasSource& s,
                                                 int horizon);

/// Emits one pipe's flow block: fill/selector ordering, the flow-to-fill tie,
/// and the squared-pressure Weymouth image equation, relaxed by big_m when a
/// compressor is installed (existing) or the pipe is absent (candidate).
GasPipeVars emit_weymouth_pwl(milp::Model& model, const caseio::Pipe& pipe, const PwlGrid& grid,
                              bool is_candidate, int horizon, std::span<const milp::VarId> i_from,
                              std::span<const milp::VarId> i_to, double big_m,
                              const std::string& prefix);

/// Full gas-network stakeholder model: sources, pipes, compressor logic,
/// nodal balance with transmitted power, investment + operating objective,
/// and consensus terms when `admm` is given.
GasVars append_gas_model(milp::Model& model, const caseio::PlanningCase& c,
                         const GasAdmmContext* admm);

struct GasBuild {
    milp::Model model;
    GasVars vars;
};
GasBuild build_gas_model(const caseio::PlanningCase& c, const GasAdmmContext* admm = nullptr);

struct GasPlan {
    std::vector<int> built_pipelines;    // candidate pipe ids chosen for investment
    std::vector<int> built_compressors;  // pipe ids fitted with a compressor
    std::vector<std::vector<double>> source_dispatch;  // [source][t]
    ChannelArray transmitted;
    double invest_cost = 0.0;
    double operating_cost = 0.0;

    [[nodiscard]] double cost() const noexcept { return invest_cost + operating_cost; }
};

GasPlan extract_gas_plan(const caseio::PlanningCase& c, const GasVars& vars,
                         const milp::Solution& sol);

/// Big-M that makes a relaxed Weymouth image equation vacuous.
double gas_big_m(const caseio::PlanningCase& c, const caseio::Pipe& pipe);

}  // namespace triplan::agents
