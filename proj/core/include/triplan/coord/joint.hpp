#pragma once

#include "triplan/coord/plan.hpp"
#include "triplan/milp/solve.hpp"

namespace triplan::coord {

struct JointVars {
    agents::GasVars gas;
    agents::ElecVars elec;
    agents::RiesVars ries;
};

struct JointBuild {
    milp::Model model;
    JointVars vars;
};

/// One MILP with all three stakeholders' variables and constraints, site
/// gating on both transmitted and received power, and transmitted power tied
/// to received power on every channel (intermediate power eliminated).
JointBuild build_joint_model(const caseio::PlanningCase& c);

struct JointResult {
    milp::Solution solution;
    CombinedPlan plan;  // meaningful only when solution.optimal()
};

JointResult solve_joint(const caseio::PlanningCase& c, const milp::SolverConfig& config = {});

}  // namespace triplan::coord
