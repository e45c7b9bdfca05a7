#include "triplan/coord/joint.hpp"

namespace triplan::coord {

using milp::LinearExpression;

JointBuild build_joint_model(const caseio::PlanningCase& c) {
    JointBuild out;
    auto& model = out.model;
    out.vars.gas = agents::append_gas_model(model, c, nullptr);
    out.vars.elec = agents::append_electric_model(model, c, nullptr);
    out.vars.ries = agents::append_ries_model(model, c, nullptr);

    const int T = c.horizon;
    const int n_nodes = static_cast<int>(c.gas.nodes.size());
    const int n_buses = static_cast<int>(c.electric.buses.size());
    const int n_ries = static_cast<int>(c.ries.size());

    for (int h = 0; h < n_ries; ++h) {
        const auto& unit = out.vars.ries.units[static_cast<std::size_t>(h)];
        const double gas_cap = agents::ries_gas_cap(c.ries[static_cast<std::size_t>(h)]);
        const double elec_cap = agents::ries_elec_cap(c.ries[static_cast<std::size_t>(h)]);
        for (int m = 0; m < n_nodes; ++m) {
            for (int t = 0; t < T; ++t) {
                const auto tp = out.vars.gas.transmitted[static_cast<std::size_t>(m)]
                                                        [static_cast<std::size_t>(h)]
                                                        [static_cast<std::size_t>(t)];
                // Transmitted gas only flows into sited districts.
                LinearExpression gate;
                gate.add(tp, 1.0);
                gate.add(unit.site_gas[static_cast<std::size_t>(m)], -gas_cap);
                model.add_le(std::move(gate), 0.0,
                             "joint.tp_gas_gate[n" + std::to_string(m) + ",h" + std::to_string(h) +
                                 ",t" + std::to_string(t) + "]");
                // Transmitted equals received on every channel.
                LinearExpression couple;
                couple.add(tp, 1.0);
                couple.add(unit.received_gas[static_cast<std::size_t>(m)]
                                            [static_cast<std::size_t>(t)],
                           -1.0);
                model.add_eq(std::move(couple), 0.0,
                             "joint.couple_gas[n" + std::to_string(m) + ",h" + std::to_string(h) +
                                 ",t" + std::to_string(t) + "]");
            }
        }
        for (int n = 0; n < n_buses; ++n) {
            for (int t = 0; t < T; ++t) {
                const auto tp = out.vars.elec.transmitted[static_cast<std::size_t>(n)]
                                                         [static_cast<std::size_t>(h)]
                                                         [static_cast<std::size_t>(t)];
                LinearExpression gate;
                gate.add(tp, 1.0);
                gate.add(unit.site_elec[static_cast<std::size_t>(n)], -elec_cap);
                model.add_le(std::move(gate), 0.0,
                             "joint.tp_elec_gate[b" + std::to_string(n) + ",h" +
                                 std::to_string(h) + ",t" + std::to_string(t) + "]");
                LinearExpression couple;
                couple.add(tp, 1.0);
                couple.add(unit.received_elec[static_cast<std::size_t>(n)]
                                             [static_cast<std::size_t>(t)],
                           -1.0);
                model.add_eq(std::move(couple), 0.0,
                             "joint.couple_elec[b" + std::to_string(n) + ",h" +
                                 std::to_string(h) + ",t" + std::to_string(t) + "]");
            }
        }
    }
    return out;
}

double combined_total(const CombinedPlan& p) {
    return p.gas.cost() + p.elec.cost() + p.ries.cost();
}

JointResult solve_joint(const caseio::PlanningCase& c, const milp::SolverConfig& config) {
    JointResult out;
    const JointBuild build = build_joint_model(c);
    out.solution = milp::solve_mip(build.model, config);
    if (out.solution.optimal()) {
        out.plan.mode = PlanMode::joint;
        out.plan.gas = agents::extract_gas_plan(c, build.vars.gas, out.solution);
        out.plan.elec = agents::extract_elec_plan(c, build.vars.elec, out.solution);
        out.plan.ries = agents::extract_ries_plan(c, build.vars.ries, out.solution);
        out.plan.total_cost = combined_total(out.plan);
    }
    return out;
}

}  // namespace triplan::coord
