#include "triplan/coord/admm.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <string>

#include "triplan/agents/pwl.hpp"
#include "triplan/error.hpp"

namespace triplan::coord {

ConsensusState initial_consensus(const caseio::PlanningCase& c) {
    const int n_nodes = static_cast<int>(c.gas.nodes.size());
    const int n_buses = static_cast<int>(c.electric.buses.size());
    const int n_ries = static_cast<int>(c.ries.size());
    ConsensusState s;
    s.lambda_gn = ChannelArray(n_nodes, n_ries, c.horizon, 1.0);
    s.lambda_ehg = ChannelArray(n_nodes, n_ries, c.horizon, 1.0);
    s.lambda_en = ChannelArray(n_buses, n_ries, c.horizon, 1.0);
    s.lambda_ehe = ChannelArray(n_buses, n_ries, c.horizon, 1.0);
    s.ip_gas = ChannelArray(n_nodes, n_ries, c.horizon, 0.0);
    s.ip_elec = ChannelArray(n_buses, n_ries, c.horizon, 0.0);
    return s;
}

ConsensusState update_consensus(const ConsensusState& s, const ChannelArray& tp_gas,
                                const ChannelArray& tp_elec, const ChannelArray& rp_gas,
                                const ChannelArray& rp_elec, const AdmmConfig& config) {
    if (!tp_gas.same_shape(s.ip_gas) || !rp_gas.same_shape(s.ip_gas) ||
        !tp_elec.same_shape(s.ip_elec) || !rp_elec.same_shape(s.ip_elec))
        throw ShapeError("update_consensus: power arrays do not match the consensus shape");

    ConsensusState next = s;
    for (std::size_t i = 0; i < s.ip_gas.data().size(); ++i) {
        const double tp = tp_gas.data()[i];
        const double rp = rp_gas.data()[i];
        const double ip = 0.5 * (tp + rp);
        next.ip_gas.data()[i] = ip;
        next.lambda_gn.data()[i] = s.lambda_gn.data()[i] + config.rho_gn * (tp - ip);
        next.lambda_ehg.data()[i] = s.lambda_ehg.data()[i] + config.rho_ehg * (rp - ip);
    }
    for (std::size_t i = 0; i < s.ip_elec.data().size(); ++i) {
        const double tp = tp_elec.data()[i];
        const double rp = rp_elec.data()[i];
        const double ip = 0.5 * (tp + rp);
        next.ip_elec.data()[i] = ip;
        next.lambda_en.data()[i] = s.lambda_en.data()[i] + config.rho_en * (tp - ip);
        next.lambda_ehe.data()[i] = s.lambda_ehe.data()[i] + config.rho_ehe * (rp - ip);
    }
    return next;
}

bool check_convergence(const ChannelArray& tp_gas, const ChannelArray& rp_gas,
                       const ChannelArray& ip_gas, const ChannelArray& tp_elec,
                       const ChannelArray& rp_elec, const ChannelArray& ip_elec, double eps_gas,
                       double eps_elec) {
    const double res_gas = std::max(max_abs_gap(tp_gas, ip_gas), max_abs_gap(rp_gas, ip_gas));
    const double res_elec = std::max(max_abs_gap(tp_elec, ip_elec), max_abs_gap(rp_elec, ip_elec));
    return res_gas <= eps_gas && res_elec <= eps_elec;
}

AdmmConfig admm_config_for(const caseio::PlanningCase& c) {
    AdmmConfig cfg;
    if (c.admm) {
        if (c.admm->rho_gn) cfg.rho_gn = *c.admm->rho_gn;
        if (c.admm->rho_en) cfg.rho_en = *c.admm->rho_en;
        if (c.admm->rho_ehg) cfg.rho_ehg = *c.admm->rho_ehg;
        if (c.admm->rho_ehe) cfg.rho_ehe = *c.admm->rho_ehe;
        if (c.admm->eps_gas) cfg.eps_gas = *c.admm->eps_gas;
        if (c.admm->eps_elec) cfg.eps_elec = *c.admm->eps_elec;
        if (c.admm->max_iters) cfg.max_iters = *c.admm->max_iters;
        if (c.admm->quad_knots) cfg.quad_knots = *c.admm->quad_knots;
    }
    return cfg;
}

namespace {

/// Exact chord error of d^2 on a grid with spacing w, evaluated at d: the
/// interpolant overshoots by (d - a)(b - d) inside the enclosing segment.
double penalty_chord_error(double d, double dmax, int knots_per_side) {
    const double w = dmax / knots_per_side;
    const double clamped = std::clamp(d, -dmax, dmax);
    const double a = std::floor(clamped / w) * w;
    return std::max(0.0, (clamped - a) * (a + w - clamped));
}

struct SubproblemOut {
    milp::Solution solution;
    ChannelArray tp_or_rp_gas;  // gas-side powers (TP for the gas agent, RP for districts)
    ChannelArray elec;          // electric-side powers where applicable
};

}  // namespace

AdmmResult admm_run(const caseio::PlanningCase& c, const AdmmConfig& config) {
    config.validate();
    const int T = c.horizon;
    const int n_nodes = static_cast<int>(c.gas.nodes.size());
    const int n_buses = static_cast<int>(c.electric.buses.size());
    const int n_ries = static_cast<int>(c.ries.size());

    ConsensusState state = initial_consensus(c);
    AdmmResult out;
    Trace& trace = out.trace;

    agents::GasPlan last_gas;
    agents::ElecPlan last_elec;
    agents::RiesPlan last_ries;
    ChannelArray tp_gas, tp_elec, rp_gas, rp_elec;

    double best_metric = std::numeric_limits<double>::infinity();
    int since_improved = 0;

    for (int k = 0; k < config.max_iters; ++k) {
        const agents::GasAdmmContext gas_ctx{&state.lambda_gn, &state.ip_gas, config.rho_gn,
                                             config.quad_knots};
        const agents::ElecAdmmContext elec_ctx{&state.lambda_en, &state.ip_elec, config.rho_en,
                                               config.quad_knots};
        const agents::RiesAdmmContext ries_ctx{&state.lambda_ehg, &state.ip_gas,  config.rho_ehg,
                                               &state.lambda_ehe, &state.ip_elec, config.rho_ehe,
                                               config.quad_knots};

        auto solve_gas = [&]() {
            const agents::GasBuild b = agents::build_gas_model(c, &gas_ctx);
            return std::make_pair(milp::solve_mip(b.model, config.solver), b.vars);
        };
        auto solve_elec = [&]() {
            const agents::ElecBuild b = agents::build_electric_model(c, &elec_ctx);
            return std::make_pair(milp::solve_mip(b.model, config.solver), b.vars);
        };
        auto solve_ries = [&]() {
            const agents::RiesBuild b = agents::build_ries_model(c, &ries_ctx);
            return std::make_pair(milp::solve_mip(b.model, config.solver), b.vars);
        };

        std::pair<milp::Solution, agents::GasVars> gas_out;
        std::pair<milp::Solution, agents::ElecVars> elec_out;
        std::pair<milp::Solution, agents::RiesVars> ries_out;
        if (config.parallel_solves) {
            auto gas_f = std::async(std::launch::async, solve_gas);
            auto elec_f = std::async(std::launch::async, solve_elec);
            ries_out = solve_ries();
            gas_out = gas_f.get();
            elec_out = elec_f.get();
        } else {
            gas_out = solve_gas();
            elec_out = solve_elec();
            ries_out = solve_ries();
        }

        if (!gas_out.first.optimal() || !elec_out.first.optimal() || !ries_out.first.optimal())
            throw Error("admm_run: a subproblem failed to solve at iteration " + std::to_string(k));

        last_gas = agents::extract_gas_plan(c, gas_out.second, gas_out.first);
        last_elec = agents::extract_elec_plan(c, elec_out.second, elec_out.first);
        last_ries = agents::extract_ries_plan(c, ries_out.second, ries_out.first);
        tp_gas = last_gas.transmitted;
        tp_elec = last_elec.transmitted;
        rp_gas = last_ries.received_gas;
        rp_elec = last_ries.received_elec;

        const double res_gas =
            std::max(max_abs_gap(tp_gas, state.ip_gas), max_abs_gap(rp_gas, state.ip_gas));
        const double res_elec =
            std::max(max_abs_gap(tp_elec, state.ip_elec), max_abs_gap(rp_elec, state.ip_elec));

        trace.records.push_back(IterationRecord{k, res_gas, res_elec, last_gas.cost(),
                                                last_elec.cost(), last_ries.cost()});
        trace.snapshots.push_back(IterationSnapshot{tp_gas, rp_gas, state.ip_gas, tp_elec, rp_elec,
                                                    state.ip_elec});
        trace.iterations = k + 1;

        if (res_gas <= config.eps_gas && res_elec <= config.eps_elec) {
            trace.converged = true;
            break;
        }

        const double metric = std::max(res_gas, res_elec);
        if (metric < best_metric - config.stall_tol) {
            best_metric = metric;
            since_improved = 0;
        } else if (++since_improved >= config.stall_window) {
            trace.stalled = true;
            break;
        }

        state = update_consensus(state, tp_gas, tp_elec, rp_gas, rp_elec, config);
    }

    CombinedPlan& plan = out.plan;
    plan.mode = PlanMode::distributed;
    plan.gas = std::move(last_gas);
    plan.elec = std::move(last_elec);
    plan.ries = std::move(last_ries);
    plan.total_cost = combined_total(plan);
    plan.converged = trace.converged;
    plan.stalled = trace.stalled;
    plan.iterations = trace.iterations;
    plan.final_residual_gas = trace.records.empty() ? 0.0 : trace.records.back().res_gas;
    plan.final_residual_elec = trace.records.empty() ? 0.0 : trace.records.back().res_elec;
    const ChannelArray& final_ip_gas =
        trace.snapshots.empty() ? state.ip_gas : trace.snapshots.back().ip_gas;
    const ChannelArray& final_ip_elec =
        trace.snapshots.empty() ? state.ip_elec : trace.snapshots.back().ip_elec;

    // Reported tolerance: the exact chord overshoot of both penalty
    // linearizations at the final residuals, plus the value of the remaining
    // transmitted/received mismatch priced at the dearest marginal rate.
    double price_gas_scale = c.price_gas;
    for (const auto& s : c.gas.sources) price_gas_scale = std::max(price_gas_scale, s.cost);
    double price_elec_scale = c.price_electricity;
    for (const auto& g : c.electric.generators) price_elec_scale = std::max(price_elec_scale, g.cost);

    double tol = 0.0;
    const double dmax_gas = std::max(1.0, caseio::gas_channel_cap(c));
    const double dmax_elec = std::max(1.0, caseio::elec_channel_cap(c));
    for (int m = 0; m < n_nodes; ++m)
        for (int h = 0; h < n_ries; ++h)
            for (int t = 0; t < T; ++t) {
                const double tp = tp_gas.at(m, h, t);
                const double rp = rp_gas.at(m, h, t);
                const double ip = final_ip_gas.at(m, h, t);
                tol += 0.5 * config.rho_gn * penalty_chord_error(tp - ip, dmax_gas, config.quad_knots);
                tol += 0.5 * config.rho_ehg * penalty_chord_error(rp - ip, dmax_gas, config.quad_knots);
                tol += std::fabs(tp - rp) * price_gas_scale;
            }
    for (int n = 0; n < n_buses; ++n)
        for (int h = 0; h < n_ries; ++h)
            for (int t = 0; t < T; ++t) {
                const double tp = tp_elec.at(n, h, t);
                const double rp = rp_elec.at(n, h, t);
                const double ip = final_ip_elec.at(n, h, t);
                tol += 0.5 * config.rho_en * penalty_chord_error(tp - ip, dmax_elec, config.quad_knots);
                tol += 0.5 * config.rho_ehe * penalty_chord_error(rp - ip, dmax_elec, config.quad_knots);
                tol += std::fabs(tp - rp) * price_elec_scale;
            }
    plan.pwl_penalty_tolerance = tol;

    return out;
}

}  // namespace triplan::coord
