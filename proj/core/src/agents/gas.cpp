#include "triplan/agents/gas.hpp"

#include <algorithm>
#include <cmath>

#include "triplan/error.hpp"

namespace triplan::agents {

using milp::LinearExpression;
using milp::Model;
using milp::Sense;
using milp::VarId;
using milp::VarKind;

std::vector<VarId> emit_source_constraints(Model& model, const caseio::GasSource& s, int horizon) {
    std::vector<VarId> out;
    out.reserve(static_cast<std::size_t>(horizon));
    for (int t = 0; t < horizon; ++t)
        out.push_back(model.add_variable(VarKind::continuous, s.p_min, s.p_max,
                                         "gas.p[s" + std::to_string(s.id) + ",t" +
                                             std::to_string(t) + "]"));
    for (int t = 1; t < horizon; ++t) {
        LinearExpression up;
        up.add(out[static_cast<std::size_t>(t)], 1.0);
        up.add(out[static_cast<std::size_t>(t) - 1], -1.0);
        model.add_le(up, s.ramp_up, "gas.rampup[s" + std::to_string(s.id) + ",t" + std::to_string(t) + "]");
        LinearExpression down;
        down.add(out[static_cast<std::size_t>(t) - 1], 1.0);
        down.add(out[static_cast<std::size_t>(t)], -1.0);
        model.add_le(down, s.ramp_down,
                     "gas.rampdn[s" + std::to_string(s.id) + ",t" + std::to_string(t) + "]");
    }
    return out;
}

GasPipeVars emit_weymouth_pwl(Model& model, const caseio::Pipe& pipe, const PwlGrid& grid,
                              bool is_candidate, int horizon, std::span<const VarId> i_from,
                              std::span<const VarId> i_to, double big_m,
                              const std::string& prefix) {
    GasPipeVars pv;
    pv.candidate = is_candidate;
    pv.grid = grid;
    const int seg = grid.segments();

    if (is_candidate)
        pv.build = model.add_variable(VarKind::binary, 0.0, 1.0, prefix + ".build");
    if (pipe.compressor_allowed)
        pv.compressor = model.add_variable(VarKind::binary, 0.0, 1.0, prefix + ".compressor");
    if (is_candidate && pipe.compressor_allowed) {
        // A compressor can only sit on a pipe that is actually built.
        LinearExpression logic;
        logic.add(pv.compressor, 1.0);
        logic.add(pv.build, -1.0);
        model.add_le(logic, 0.0, prefix + ".compressor_needs_pipe");
    }

    const double w2 = pipe.weymouth * pipe.weymouth;
    for (int t = 0; t < horizon; ++t) {
        const std::string pt = prefix + ",t" + std::to_string(t);
        const VarId flow = model.add_variable(VarKind::continuous, -pipe.flow_max, pipe.flow_max,
                                              pt + ".flow");
        pv.flow.push_back(flow);

        std::vector<VarId> fill;
        for (int k = 0; k < seg; ++k)
            fill.push_back(model.add_variable(VarKind::continuous, 0.0, 1.0,
                                              pt + ".fill" + std::to_string(k)));
        std::vector<VarId> sel;
        for (int k = 0; k + 1 < seg; ++k)
            sel.push_back(model.add_variable(VarKind::binary, 0.0, 1.0,
                                             pt + ".sel" + std::to_string(k)));

        // Fill-order chain: sel_k <= fill_k and fill_{k+1} <= sel_k.
        for (int k = 0; k + 1 < seg; ++k) {
            LinearExpression a;
            a.add(sel[static_cast<std::size_t>(k)], 1.0);
            a.add(fill[static_cast<std::size_t>(k)], -1.0);
            model.add_le(a, 0.0, pt + ".order_a" + std::to_string(k));
            LinearExpression b;
            b.add(fill[static_cast<std::size_t>(k) + 1], 1.0);
            b.add(sel[static_cast<std::size_t>(k)], -1.0);
            model.add_le(b, 0.0, pt + ".order_b" + std::to_string(k));
        }

        // Flow is parametrized by the fills.
        LinearExpression tie;
        tie.add(flow, 1.0);
        for (int k = 0; k < seg; ++k)
            tie.add(fill[static_cast<std::size_t>(k)],
                    -(grid.breakpoints[static_cast<std::size_t>(k) + 1] -
                      grid.breakpoints[static_cast<std::size_t>(k)]));
        model.add_eq(std::move(tie), grid.breakpoints.front(), pt + ".tie");

        // Weymouth image: W^2 (I_from - I_to) = interpolated flow image,
        // relaxed through big_m when the pipe runs a compressor or is absent.
        LinearExpression wey;
        wey.add(i_from[static_cast<std::size_t>(t)], w2);
        wey.add(i_to[static_cast<std::size_t>(t)], -w2);
        for (int k = 0; k < seg; ++k)
            wey.add(fill[static_cast<std::size_t>(k)],
                    -(grid.images[static_cast<std::size_t>(k) + 1] -
                      grid.images[static_cast<std::size_t>(k)]));

        LinearExpression gate;  // big_m * (relaxation indicator)
        bool relaxable = false;
        if (!is_candidate && pipe.compressor_allowed) {
            gate.add(pv.compressor, big_m);
            relaxable = true;
        } else if (is_candidate) {
            // 1 - (y - y_com): vacuous unless the pipe is built without a compressor.
            gate.add_constant(big_m);
            gate.add(pv.build, -big_m);
            if (pipe.compressor_allowed) gate.add(pv.compressor, big_m);
            relaxable = true;
        }
        if (relaxable) {
            LinearExpression upper = wey;
            upper.add(gate, -1.0);
            model.add_le(std::move(upper), grid.images.front(), pt + ".wey_ub");
            LinearExpression lower = std::move(wey);
            lower.add(gate, 1.0);
            model.add_ge(std::move(lower), grid.images.front(), pt + ".wey_lb");
        } else {
            model.add_eq(std::move(wey), grid.images.front(), pt + ".wey");
        }

        // Candidate flow bounds gated by the build decision.
        if (is_candidate) {
            LinearExpression ub;
            ub.add(flow, 1.0);
            ub.add(pv.build, -pipe.flow_max);
            model.add_le(ub, 0.0, pt + ".flow_ub");
            LinearExpression lb;
            lb.add(flow, 1.0);
            lb.add(pv.build, pipe.flow_max);
            model.add_ge(lb, 0.0, pt + ".flow_lb");
        }

        pv.fill.push_back(std::move(fill));
        pv.selector.push_back(std::move(sel));
    }
    return pv;
}

double gas_big_m(const caseio::PlanningCase& c, const caseio::Pipe& pipe) {
    double max_sq_pressure = 0.0;
    for (const auto& n : c.gas.nodes)
        max_sq_pressure = std::max(max_sq_pressure, n.pressure_max * n.pressure_max);
    double max_image = 0.0;
    for (const auto& p : c.gas.existing_pipes) max_image = std::max(max_image, p.flow_max * p.flow_max);
    for (const auto& p : c.gas.candidate_pipes) max_image = std::max(max_image, p.flow_max * p.flow_max);
    return 2.0 * pipe.weymouth * pipe.weymouth * max_sq_pressure + max_image;
}

GasVars append_gas_model(Model& model, const caseio::PlanningCase& c, const GasAdmmContext* admm) {
    const int T = c.horizon;
    const int n_nodes = static_cast<int>(c.gas.nodes.size());
    const int n_ries = static_cast<int>(c.ries.size());
    const caseio::CaseIndex index(c);
    GasVars vars;

    if (admm) {
        if (!admm->lambda || !admm->ip) throw ShapeError("gas agent: admm context incomplete");
        const ChannelArray want(n_nodes, n_ries, T);
        if (!admm->lambda->same_shape(want) || !admm->ip->same_shape(want))
            throw ShapeError("gas agent: consensus arrays do not match (nodes, ries, T)");
    }

    for (const auto& s : c.gas.sources) vars.source_output.push_back(emit_source_constraints(model, s, T));

    for (int m = 0; m < n_nodes; ++m) {
        const auto& node = c.gas.nodes[static_cast<std::size_t>(m)];
        std::vector<VarId> col;
        for (int t = 0; t < T; ++t)
            col.push_back(model.add_variable(VarKind::continuous,
                                             node.pressure_min * node.pressure_min,
                                             node.pressure_max * node.pressure_max,
                                             "gas.I[n" + std::to_string(node.id) + ",t" +
                                                 std::to_string(t) + "]"));
        vars.sq_pressure.push_back(std::move(col));
    }

    auto emit_pipe = [&](const caseio::Pipe& pipe, bool candidate) {
        const PwlGrid grid = make_pwl_grid(pipe.flow_max, c.segments);
        const int from = index.node(pipe.from);
        const int to = index.node(pipe.to);
        vars.pipes.push_back(emit_weymouth_pwl(
            model, pipe, grid, candidate, T, vars.sq_pressure[static_cast<std::size_t>(from)],
            vars.sq_pressure[static_cast<std::size_t>(to)], gas_big_m(c, pipe),
            std::string("gas.pipe[") + std::to_string(pipe.id) + "]"));
    };
    for (const auto& p : c.gas.existing_pipes) emit_pipe(p, false);
    for (const auto& p : c.gas.candidate_pipes) emit_pipe(p, true);

    const double cap = gas_channel_cap(c);
    for (int m = 0; m < n_nodes; ++m) {
        std::vector<std::vector<VarId>> by_h;
        for (int h = 0; h < n_ries; ++h) {
            std::vector<VarId> by_t;
            for (int t = 0; t < T; ++t)
                by_t.push_back(model.add_variable(
                    VarKind::continuous, 0.0, cap,
                    "gas.tp[n" + std::to_string(c.gas.nodes[static_cast<std::size_t>(m)].id) +
                        ",h" + std::to_string(h) + ",t" + std::to_string(t) + "]"));
            by_h.push_back(std::move(by_t));
        }
        vars.transmitted.push_back(std::move(by_h));
    }

    // Nodal balance: sources + incidence * flows = transmitted + load.
    std::vector<const caseio::Pipe*> pipe_specs;
    for (const auto& p : c.gas.existing_pipes) pipe_specs.push_back(&p);
    for (const auto& p : c.gas.candidate_pipes) pipe_specs.push_back(&p);
    for (int m = 0; m < n_nodes; ++m) {
        const auto& node = c.gas.nodes[static_cast<std::size_t>(m)];
        for (int t = 0; t < T; ++t) {
            LinearExpression bal;
            for (std::size_t s = 0; s < c.gas.sources.size(); ++s)
                if (index.node(c.gas.sources[s].node) == m)
                    bal.add(vars.source_output[s][static_cast<std::size_t>(t)], 1.0);
            for (std::size_t p = 0; p < pipe_specs.size(); ++p) {
                if (index.node(pipe_specs[p]->from) == m)
                    bal.add(vars.pipes[p].flow[static_cast<std::size_t>(t)], 1.0);
                else if (index.node(pipe_specs[p]->to) == m)
                    bal.add(vars.pipes[p].flow[static_cast<std::size_t>(t)], -1.0);
            }
            for (int h = 0; h < n_ries; ++h)
                bal.add(vars.transmitted[static_cast<std::size_t>(m)][static_cast<std::size_t>(h)]
                                        [static_cast<std::size_t>(t)],
                        -1.0);
            model.add_eq(std::move(bal), node.load[static_cast<std::size_t>(t)],
                         "gas.balance[n" + std::to_string(node.id) + ",t" + std::to_string(t) + "]");
        }
    }

    // Objective slice: pipeline + compressor investment, source operating cost.
    auto& obj = model.objective();
    {
        std::size_t p = c.gas.existing_pipes.size();
        for (const auto& pipe : c.gas.candidate_pipes) {
            obj.add(vars.pipes[p].build, pipe.invest_cost);
            ++p;
        }
        p = 0;
        for (const auto& pipe : c.gas.existing_pipes) {
            if (pipe.compressor_allowed) obj.add(vars.pipes[p].compressor, pipe.compressor_cost);
            ++p;
        }
        for (const auto& pipe : c.gas.candidate_pipes) {
            if (pipe.compressor_allowed) obj.add(vars.pipes[p].compressor, pipe.compressor_cost);
            ++p;
        }
    }
    for (std::size_t s = 0; s < c.gas.sources.size(); ++s)
        for (int t = 0; t < T; ++t)
            obj.add(vars.source_output[s][static_cast<std::size_t>(t)], c.gas.sources[s].cost);

    if (admm) {
        const QuadPenaltyGrid grid = make_quad_grid(std::max(1.0, cap), admm->quad_knots);
        for (int m = 0; m < n_nodes; ++m)
            for (int h = 0; h < n_ries; ++h)
                for (int t = 0; t < T; ++t)
                    emit_consensus_penalty(
                        model,
                        vars.transmitted[static_cast<std::size_t>(m)][static_cast<std::size_t>(h)]
                                        [static_cast<std::size_t>(t)],
                        admm->lambda->at(m, h, t), admm->ip->at(m, h, t), admm->rho, grid,
                        "gas.pen[n" + std::to_string(m) + ",h" + std::to_string(h) + ",t" +
                            std::to_string(t) + "]");
    }

    return vars;
}

GasBuild build_gas_model(const caseio::PlanningCase& c, const GasAdmmContext* admm) {
    GasBuild out;
    out.vars = append_gas_model(out.model, c, admm);
    return out;
}

GasPlan extract_gas_plan(const caseio::PlanningCase& c, const GasVars& vars,
                         const milp::Solution& sol) {
    GasPlan plan;
    const int T = c.horizon;
    const int n_nodes = static_cast<int>(c.gas.nodes.size());
    const int n_ries = static_cast<int>(c.ries.size());
    auto value = [&](VarId v) { return sol.values[static_cast<std::size_t>(v.index)]; };

    plan.transmitted = ChannelArray(n_nodes, n_ries, T);
    for (int m = 0; m < n_nodes; ++m)
        for (int h = 0; h < n_ries; ++h)
            for (int t = 0; t < T; ++t)
                plan.transmitted.at(m, h, t) =
                    value(vars.transmitted[static_cast<std::size_t>(m)][static_cast<std::size_t>(h)]
                                          [static_cast<std::size_t>(t)]);

    for (std::size_t s = 0; s < c.gas.sources.size(); ++s) {
        std::vector<double> sched;
        for (int t = 0; t < T; ++t) {
            sched.push_back(value(vars.source_output[s][static_cast<std::size_t>(t)]));
            plan.operating_cost += c.gas.sources[s].cost * sched.back();
        }
        plan.source_dispatch.push_back(std::move(sched));
    }

    std::vector<const caseio::Pipe*> pipe_specs;
    for (const auto& p : c.gas.existing_pipes) pipe_specs.push_back(&p);
    for (const auto& p : c.gas.candidate_pipes) pipe_specs.push_back(&p);
    for (std::size_t p = 0; p < pipe_specs.size(); ++p) {
        const auto& pv = vars.pipes[p];
        if (pv.candidate && value(pv.build) > 0.5) {
            plan.built_pipelines.push_back(pipe_specs[p]->id);
            plan.invest_cost += pipe_specs[p]->invest_cost;
        }
        if (pv.compressor.valid() && value(pv.compressor) > 0.5) {
            plan.built_compressors.push_back(pipe_specs[p]->id);
            plan.invest_cost += pipe_specs[p]->compressor_cost;
        }
    }
    return plan;
}

}  // namespace triplan::agents
