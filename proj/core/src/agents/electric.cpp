#include "triplan/agents/electric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "triplan/agents/pwl.hpp"
#include "triplan/error.hpp"

namespace triplan::agents {

using milp::LinearExpression;
using milp::Model;
using milp::VarId;
using milp::VarKind;

GenVars emit_unit_commitment(Model& model, const caseio::Generator& g, int horizon) {
    GenVars gv;
    const std::string tag = "elec.gen[" + std::to_string(g.id) + "]";
    for (int t = 0; t < horizon; ++t) {
        gv.output.push_back(model.add_variable(VarKind::continuous, 0.0, g.p_max,
                                               tag + ".p[t" + std::to_string(t) + "]"));
        gv.on.push_back(model.add_variable(VarKind::binary, 0.0, 1.0,
                                           tag + ".on[t" + std::to_string(t) + "]"));
    }
    gv.startup.resize(static_cast<std::size_t>(horizon));
    gv.shutdown.resize(static_cast<std::size_t>(horizon));
    for (int t = 1; t < horizon; ++t) {
        gv.startup[static_cast<std::size_t>(t)] = model.add_variable(
            VarKind::binary, 0.0, 1.0, tag + ".start[t" + std::to_string(t) + "]");
        gv.shutdown[static_cast<std::size_t>(t)] = model.add_variable(
            VarKind::binary, 0.0, 1.0, tag + ".stop[t" + std::to_string(t) + "]");
    }

    for (int t = 0; t < horizon; ++t) {
        LinearExpression ub;  // P <= u * Pmax
        ub.add(gv.output[static_cast<std::size_t>(t)], 1.0);
        ub.add(gv.on[static_cast<std::size_t>(t)], -g.p_max);
        model.add_le(std::move(ub), 0.0, tag + ".cap[t" + std::to_string(t) + "]");
        if (g.p_min > 0.0) {
            LinearExpression lb;  // P >= u * Pmin
            lb.add(gv.output[static_cast<std::size_t>(t)], 1.0);
            lb.add(gv.on[static_cast<std::size_t>(t)], -g.p_min);
            model.add_ge(std::move(lb), 0.0, tag + ".floor[t" + std::to_string(t) + "]");
        }
    }
    for (int t = 1; t < horizon; ++t) {
        LinearExpression up;
        up.add(gv.output[static_cast<std::size_t>(t)], 1.0);
        up.add(gv.output[static_cast<std::size_t>(t) - 1], -1.0);
        model.add_le(std::move(up), g.ramp_up, tag + ".rampup[t" + std::to_string(t) + "]");
        LinearExpression down;
        down.add(gv.output[static_cast<std::size_t>(t) - 1], 1.0);
        down.add(gv.output[static_cast<std::size_t>(t)], -1.0);
        model.add_le(std::move(down), g.ramp_down, tag + ".rampdn[t" + std::to_string(t) + "]");

        LinearExpression trans;  // u_t - u_{t-1} = v_t - w_t
        trans.add(gv.on[static_cast<std::size_t>(t)], 1.0);
        trans.add(gv.on[static_cast<std::size_t>(t) - 1], -1.0);
        trans.add(gv.startup[static_cast<std::size_t>(t)], -1.0);
        trans.add(gv.shutdown[static_cast<std::size_t>(t)], 1.0);
        model.add_eq(std::move(trans), 0.0, tag + ".trans[t" + std::to_string(t) + "]");

        LinearExpression excl;
        excl.add(gv.startup[static_cast<std::size_t>(t)], 1.0);
        excl.add(gv.shutdown[static_cast<std::size_t>(t)], 1.0);
        model.add_le(std::move(excl), 1.0, tag + ".excl[t" + std::to_string(t) + "]");
    }

    // Rolling windows; startups/shutdowns before the horizon do not exist.
    for (int t = g.min_up - 1; t < horizon; ++t) {
        LinearExpression win;
        bool any = false;
        for (int tau = std::max(1, t - g.min_up + 1); tau <= t; ++tau) {
            win.add(gv.startup[static_cast<std::size_t>(tau)], 1.0);
            any = true;
        }
        if (!any) continue;
        win.add(gv.on[static_cast<std::size_t>(t)], -1.0);
        model.add_le(std::move(win), 0.0, tag + ".minup[t" + std::to_string(t) + "]");
    }
    for (int t = g.min_down - 1; t < horizon; ++t) {
        LinearExpression win;
        bool any = false;
        for (int tau = std::max(1, t - g.min_down + 1); tau <= t; ++tau) {
            win.add(gv.shutdown[static_cast<std::size_t>(tau)], 1.0);
            any = true;
        }
        if (!any) continue;
        win.add(gv.on[static_cast<std::size_t>(t)], 1.0);
        model.add_le(std::move(win), 1.0, tag + ".mindn[t" + std::to_string(t) + "]");
    }
    return gv;
}

LineVars emit_dc_flow(Model& model, const caseio::Line& line, bool is_candidate, int horizon,
                      std::span<const VarId> theta_from, std::span<const VarId> theta_to,
                      const std::string& prefix) {
    LineVars lv;
    lv.candidate = is_candidate;
    if (is_candidate) lv.build = model.add_variable(VarKind::binary, 0.0, 1.0, prefix + ".build");
    const double susceptance = 1.0 / line.reactance;
    const double big_m = 2.0 * std::numbers::pi / line.reactance;

    for (int t = 0; t < horizon; ++t) {
        const std::string pt = prefix + ",t" + std::to_string(t);
        const VarId flow = model.add_variable(VarKind::continuous, -line.flow_max, line.flow_max,
                                              pt + ".flow");
        lv.flow.push_back(flow);

        LinearExpression dc;  // PF - (theta_from - theta_to)/x
        dc.add(flow, 1.0);
        dc.add(theta_from[static_cast<std::size_t>(t)], -susceptance);
        dc.add(theta_to[static_cast<std::size_t>(t)], susceptance);
        if (!is_candidate) {
            model.add_eq(std::move(dc), 0.0, pt + ".dc");
        } else {
            LinearExpression upper = dc;  // dc <= (1 - y) * M
            upper.add(lv.build, big_m);
            model.add_le(std::move(upper), big_m, pt + ".dc_ub");
            LinearExpression lower = std::move(dc);  // dc >= -(1 - y) * M
            lower.add(lv.build, -big_m);
            model.add_ge(std::move(lower), -big_m, pt + ".dc_lb");

            LinearExpression fub;  // |PF| <= y * cap
            fub.add(flow, 1.0);
            fub.add(lv.build, -line.flow_max);
            model.add_le(std::move(fub), 0.0, pt + ".flow_ub");
            LinearExpression flb;
            flb.add(flow, 1.0);
            flb.add(lv.build, line.flow_max);
            model.add_ge(std::move(flb), 0.0, pt + ".flow_lb");
        }
    }
    return lv;
}

ElecVars append_electric_model(Model& model, const caseio::PlanningCase& c,
                               const ElecAdmmContext* admm) {
    const int T = c.horizon;
    const int n_buses = static_cast<int>(c.electric.buses.size());
    const int n_ries = static_cast<int>(c.ries.size());
    const caseio::CaseIndex index(c);
    ElecVars vars;

    if (admm) {
        if (!admm->lambda || !admm->ip) throw ShapeError("electric agent: admm context incomplete");
        const ChannelArray want(n_buses, n_ries, T);
        if (!admm->lambda->same_shape(want) || !admm->ip->same_shape(want))
            throw ShapeError("electric agent: consensus arrays do not match (buses, ries, T)");
    }

    for (const auto& g : c.electric.generators)
        vars.generators.push_back(emit_unit_commitment(model, g, T));

    const int slack = index.bus(c.electric.slack_bus);
    for (int n = 0; n < n_buses; ++n) {
        std::vector<VarId> col;
        for (int t = 0; t < T; ++t) {
            const double bound = n == slack ? 0.0 : std::numbers::pi;
            col.push_back(model.add_variable(
                VarKind::continuous, -bound, bound,
                "elec.theta[b" + std::to_string(c.electric.buses[static_cast<std::size_t>(n)].id) +
                    ",t" + std::to_string(t) + "]"));
        }
        vars.angle.push_back(std::move(col));
    }

    auto emit_line = [&](const caseio::Line& line, bool candidate) {
        vars.lines.push_back(emit_dc_flow(
            model, line, candidate, T, vars.angle[static_cast<std::size_t>(index.bus(line.from))],
            vars.angle[static_cast<std::size_t>(index.bus(line.to))],
            "elec.line[" + std::to_string(line.id) + "]"));
    };
    for (const auto& l : c.electric.existing_lines) emit_line(l, false);
    for (const auto& l : c.electric.candidate_lines) emit_line(l, true);

    const double cap = elec_channel_cap(c);
    for (int n = 0; n < n_buses; ++n) {
        std::vector<std::vector<VarId>> by_h;
        for (int h = 0; h < n_ries; ++h) {
            std::vector<VarId> by_t;
            for (int t = 0; t < T; ++t)
                by_t.push_back(model.add_variable(
                    VarKind::continuous, 0.0, cap,
                    "elec.tp[b" +
                        std::to_string(c.electric.buses[static_cast<std::size_t>(n)].id) + ",h" +
                        std::to_string(h) + ",t" + std::to_string(t) + "]"));
            by_h.push_back(std::move(by_t));
        }
        vars.transmitted.push_back(std::move(by_h));
    }

    // Bus balance: generation + incidence * flows = transmitted + load.
    std::vector<const caseio::Line*> line_specs;
    for (const auto& l : c.electric.existing_lines) line_specs.push_back(&l);
    for (const auto& l : c.electric.candidate_lines) line_specs.push_back(&l);
    for (int n = 0; n < n_buses; ++n) {
        const auto& bus = c.electric.buses[static_cast<std::size_t>(n)];
        for (int t = 0; t < T; ++t) {
            LinearExpression bal;
            for (std::size_t j = 0; j < c.electric.generators.size(); ++j)
                if (index.bus(c.electric.generators[j].bus) == n)
                    bal.add(vars.generators[j].output[static_cast<std::size_t>(t)], 1.0);
            for (std::size_t l = 0; l < line_specs.size(); ++l) {
                if (index.bus(line_specs[l]->from) == n)
                    bal.add(vars.lines[l].flow[static_cast<std::size_t>(t)], 1.0);
                else if (index.bus(line_specs[l]->to) == n)
                    bal.add(vars.lines[l].flow[static_cast<std::size_t>(t)], -1.0);
            }
            for (int h = 0; h < n_ries; ++h)
                bal.add(vars.transmitted[static_cast<std::size_t>(n)][static_cast<std::size_t>(h)]
                                        [static_cast<std::size_t>(t)],
                        -1.0);
            model.add_eq(std::move(bal), bus.load[static_cast<std::size_t>(t)],
                         "elec.balance[b" + std::to_string(bus.id) + ",t" + std::to_string(t) + "]");
        }
    }

    auto& obj = model.objective();
    {
        std::size_t l = c.electric.existing_lines.size();
        for (const auto& line : c.electric.candidate_lines) {
            obj.add(vars.lines[l].build, line.invest_cost);
            ++l;
        }
    }
    for (std::size_t j = 0; j < c.electric.generators.size(); ++j)
        for (int t = 0; t < T; ++t)
            obj.add(vars.generators[j].output[static_cast<std::size_t>(t)],
                    c.electric.generators[j].cost);

    if (admm) {
        const QuadPenaltyGrid grid = make_quad_grid(std::max(1.0, cap), admm->quad_knots);
        for (int n = 0; n < n_buses; ++n)
            for (int h = 0; h < n_ries; ++h)
                for (int t = 0; t < T; ++t)
                    emit_consensus_penalty(
                        model,
                        vars.transmitted[static_cast<std::size_t>(n)][static_cast<std::size_t>(h)]
                                        [static_cast<std::size_t>(t)],
                        admm->lambda->at(n, h, t), admm->ip->at(n, h, t), admm->rho, grid,
                        "elec.pen[b" + std::to_string(n) + ",h" + std::to_string(h) + ",t" +
                            std::to_string(t) + "]");
    }

    return vars;
}

ElecBuild build_electric_model(const caseio::PlanningCase& c, const ElecAdmmContext* admm) {
    ElecBuild out;
    out.vars = append_electric_model(out.model, c, admm);
    return out;
}

ElecPlan extract_elec_plan(const caseio::PlanningCase& c, const ElecVars& vars,
                           const milp::Solution& sol) {
    ElecPlan plan;
    const int T = c.horizon;
    const int n_buses = static_cast<int>(c.electric.buses.size());
    const int n_ries = static_cast<int>(c.ries.size());
    auto value = [&](VarId v) { return sol.values[static_cast<std::size_t>(v.index)]; };

    plan.transmitted = ChannelArray(n_buses, n_ries, T);
    for (int n = 0; n < n_buses; ++n)
        for (int h = 0; h < n_ries; ++h)
            for (int t = 0; t < T; ++t)
                plan.transmitted.at(n, h, t) =
                    value(vars.transmitted[static_cast<std::size_t>(n)][static_cast<std::size_t>(h)]
                                          [static_cast<std::size_t>(t)]);

    for (std::size_t j = 0; j < c.electric.generators.size(); ++j) {
        std::vector<int> on;
        std::vector<double> p;
        for (int t = 0; t < T; ++t) {
            on.push_back(value(vars.generators[j].on[static_cast<std::size_t>(t)]) > 0.5 ? 1 : 0);
            p.push_back(value(vars.generators[j].output[static_cast<std::size_t>(t)]));
            plan.operating_cost += c.electric.generators[j].cost * p.back();
        }
        plan.commitment.push_back(std::move(on));
        plan.dispatch.push_back(std::move(p));
    }

    for (std::size_t l = 0; l < c.electric.candidate_lines.size(); ++l) {
        const auto& lv = vars.lines[c.electric.existing_lines.size() + l];
        if (value(lv.build) > 0.5) {
            plan.built_lines.push_back(c.electric.candidate_lines[l].id);
            plan.invest_cost += c.electric.candidate_lines[l].invest_cost;
        }
    }
    return plan;
}

}  // namespace triplan::agents
