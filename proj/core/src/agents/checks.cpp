#include "triplan/agents/checks.hpp"

#include <algorithm>
#include <cmath>

namespace triplan::agents {

namespace {

constexpr double kBinTol = 1e-6;

double val(const milp::Solution& sol, milp::VarId v) {
    return sol.values[static_cast<std::size_t>(v.index)];
}

}  // namespace

GasCheck check_gas_solution(const caseio::PlanningCase& c, const GasVars& vars,
                            const milp::Solution& sol) {
    GasCheck out;
    const int T = c.horizon;
    const caseio::CaseIndex index(c);

    std::vector<const caseio::Pipe*> pipes;
    for (const auto& p : c.gas.existing_pipes) pipes.push_back(&p);
    for (const auto& p : c.gas.candidate_pipes) pipes.push_back(&p);

    for (std::size_t m = 0; m < c.gas.nodes.size(); ++m) {
        for (int t = 0; t < T; ++t) {
            double lhs = 0.0;
            for (std::size_t s = 0; s < c.gas.sources.size(); ++s)
                if (index.node(c.gas.sources[s].node) == static_cast<int>(m))
                    lhs += val(sol, vars.source_output[s][static_cast<std::size_t>(t)]);
            for (std::size_t p = 0; p < pipes.size(); ++p) {
                const double gf = val(sol, vars.pipes[p].flow[static_cast<std::size_t>(t)]);
                if (index.node(pipes[p]->from) == static_cast<int>(m)) lhs += gf;
                if (index.node(pipes[p]->to) == static_cast<int>(m)) lhs -= gf;
            }
            double rhs = c.gas.nodes[m].load[static_cast<std::size_t>(t)];
            for (std::size_t h = 0; h < c.ries.size(); ++h)
                rhs += val(sol, vars.transmitted[m][h][static_cast<std::size_t>(t)]);
            out.balance_residual = std::max(out.balance_residual, std::fabs(lhs - rhs));
        }
    }

    for (std::size_t p = 0; p < pipes.size(); ++p) {
        const auto& pv = vars.pipes[p];
        const bool built = !pv.candidate || val(sol, pv.build) > 0.5;
        if (pv.candidate && pv.compressor.valid() && val(sol, pv.compressor) > 0.5 &&
            val(sol, pv.build) < 0.5)
            out.compressor_logic_ok = false;
        for (int t = 0; t < T; ++t) {
            const double gf = val(sol, pv.flow[static_cast<std::size_t>(t)]);
            if (!built) out.gating_violation = std::max(out.gating_violation, std::fabs(gf));

            const auto& fills = pv.fill[static_cast<std::size_t>(t)];
            const auto& sels = pv.selector[static_cast<std::size_t>(t)];
            for (std::size_t k = 0; k + 1 < fills.size(); ++k) {
                const double next = val(sol, fills[k + 1]);
                if (next > kBinTol) {
                    if (val(sol, sels[k]) < 0.5 || val(sol, fills[k]) < 1.0 - kBinTol)
                        out.segment_order_ok = false;
                }
                if (val(sol, sels[k]) > 0.5 && val(sol, fills[k]) < 1.0 - kBinTol)
                    out.segment_order_ok = false;
            }

            // When the flow sits on a grid knot the fill image must equal
            // GF|GF| there exactly.
            for (std::size_t k = 0; k < pv.grid.breakpoints.size(); ++k) {
                if (std::fabs(gf - pv.grid.breakpoints[k]) > 1e-9) continue;
                double image = pv.grid.images.front();
                for (std::size_t f = 0; f < fills.size(); ++f)
                    image += val(sol, fills[f]) * (pv.grid.images[f + 1] - pv.grid.images[f]);
                out.knot_gap = std::max(out.knot_gap, std::fabs(image - gf * std::fabs(gf)));
            }
        }
    }
    return out;
}

ElecCheck check_elec_solution(const caseio::PlanningCase& c, const ElecVars& vars,
                              const milp::Solution& sol) {
    ElecCheck out;
    const int T = c.horizon;
    const caseio::CaseIndex index(c);

    std::vector<const caseio::Line*> lines;
    for (const auto& l : c.electric.existing_lines) lines.push_back(&l);
    for (const auto& l : c.electric.candidate_lines) lines.push_back(&l);

    for (std::size_t n = 0; n < c.electric.buses.size(); ++n) {
        for (int t = 0; t < T; ++t) {
            double lhs = 0.0;
            for (std::size_t j = 0; j < c.electric.generators.size(); ++j)
                if (index.bus(c.electric.generators[j].bus) == static_cast<int>(n))
                    lhs += val(sol, vars.generators[j].output[static_cast<std::size_t>(t)]);
            for (std::size_t l = 0; l < lines.size(); ++l) {
                const double pf = val(sol, vars.lines[l].flow[static_cast<std::size_t>(t)]);
                if (index.bus(lines[l]->from) == static_cast<int>(n)) lhs += pf;
                if (index.bus(lines[l]->to) == static_cast<int>(n)) lhs -= pf;
            }
            double rhs = c.electric.buses[n].load[static_cast<std::size_t>(t)];
            for (std::size_t h = 0; h < c.ries.size(); ++h)
                rhs += val(sol, vars.transmitted[n][h][static_cast<std::size_t>(t)]);
            out.kcl_residual = std::max(out.kcl_residual, std::fabs(lhs - rhs));
        }
    }

    const int slack = index.bus(c.electric.slack_bus);
    for (int t = 0; t < T; ++t)
        out.slack_angle = std::max(
            out.slack_angle,
            std::fabs(val(sol, vars.angle[static_cast<std::size_t>(slack)][static_cast<std::size_t>(t)])));

    for (std::size_t l = c.electric.existing_lines.size(); l < lines.size(); ++l) {
        if (val(sol, vars.lines[l].build) > 0.5) continue;
        for (int t = 0; t < T; ++t)
            out.gating_violation = std::max(
                out.gating_violation, std::fabs(val(sol, vars.lines[l].flow[static_cast<std::size_t>(t)])));
    }

    for (std::size_t j = 0; j < c.electric.generators.size(); ++j) {
        const auto& g = c.electric.generators[j];
        const auto& gv = vars.generators[j];
        std::vector<int> u(static_cast<std::size_t>(T)), v(static_cast<std::size_t>(T), 0),
            w(static_cast<std::size_t>(T), 0);
        for (int t = 0; t < T; ++t) u[static_cast<std::size_t>(t)] = val(sol, gv.on[static_cast<std::size_t>(t)]) > 0.5;
        for (int t = 1; t < T; ++t) {
            v[static_cast<std::size_t>(t)] = val(sol, gv.startup[static_cast<std::size_t>(t)]) > 0.5;
            w[static_cast<std::size_t>(t)] = val(sol, gv.shutdown[static_cast<std::size_t>(t)]) > 0.5;
            if (u[static_cast<std::size_t>(t)] - u[static_cast<std::size_t>(t) - 1] !=
                v[static_cast<std::size_t>(t)] - w[static_cast<std::size_t>(t)])
                out.commitment_ok = false;
        }
        for (int t = g.min_up - 1; t < T; ++t) {
            int sum = 0;
            for (int tau = std::max(1, t - g.min_up + 1); tau <= t; ++tau)
                sum += v[static_cast<std::size_t>(tau)];
            if (sum > u[static_cast<std::size_t>(t)]) out.minupdown_ok = false;
        }
        for (int t = g.min_down - 1; t < T; ++t) {
            int sum = 0;
            for (int tau = std::max(1, t - g.min_down + 1); tau <= t; ++tau)
                sum += w[static_cast<std::size_t>(tau)];
            if (sum > 1 - u[static_cast<std::size_t>(t)]) out.minupdown_ok = false;
        }
    }
    return out;
}

RiesCheck check_ries_solution(const caseio::PlanningCase& c, const RiesVars& vars,
                              const milp::Solution& sol) {
    RiesCheck out;
    const int T = c.horizon;
    constexpr caseio::Carrier carriers[] = {caseio::Carrier::electricity, caseio::Carrier::heat,
                                            caseio::Carrier::cold, caseio::Carrier::gas};

    for (std::size_t h = 0; h < c.ries.size(); ++h) {
        const auto& spec = c.ries[h];
        const auto& unit = vars.units[h];

        for (const auto k : carriers) {
            const auto lit = spec.loads.find(k);
            for (int t = 0; t < T; ++t) {
                double lhs = val(sol, unit.output[static_cast<std::size_t>(carrier_index(k))]
                                                 [static_cast<std::size_t>(t)]);
                for (std::size_t e = 0; e < spec.ess.size(); ++e) {
                    if (caseio::ess_carrier(spec.ess[e].kind) != k) continue;
                    lhs -= val(sol, unit.ess[e].charge[static_cast<std::size_t>(t)]);
                    lhs += val(sol, unit.ess[e].discharge[static_cast<std::size_t>(t)]);
                }
                if (k == caseio::Carrier::electricity)
                    for (const auto& rv : unit.res) lhs += val(sol, rv.output[static_cast<std::size_t>(t)]);
                const double rhs = lit == spec.loads.end() ? 0.0 : lit->second[static_cast<std::size_t>(t)];
                out.carrier_residual = std::max(out.carrier_residual, std::fabs(lhs - rhs));
            }
        }

        for (int t = 0; t < T; ++t) {
            double rp_gas = 0.0, in_gas = 0.0, rp_elec = 0.0, in_elec = 0.0;
            for (const auto& by_t : unit.received_gas) rp_gas += val(sol, by_t[static_cast<std::size_t>(t)]);
            for (const auto& by_t : unit.received_elec) rp_elec += val(sol, by_t[static_cast<std::size_t>(t)]);
            for (std::size_t i = 0; i < spec.devices.size(); ++i) {
                const double in = val(sol, unit.devices[i].input[static_cast<std::size_t>(t)]);
                if (caseio::device_input_is_gas(spec.devices[i].kind)) in_gas += in;
                if (spec.devices[i].kind == caseio::DeviceKind::TL ||
                    spec.devices[i].kind == caseio::DeviceKind::AC)
                    in_elec += in;
            }
            out.input_chain_residual = std::max(out.input_chain_residual, std::fabs(rp_gas - in_gas));
            out.input_chain_residual = std::max(out.input_chain_residual, std::fabs(rp_elec - in_elec));
        }

        for (std::size_t e = 0; e < spec.ess.size(); ++e) {
            const auto& ev = unit.ess[e];
            if (T > 1)
                out.soc_periodicity = std::max(
                    out.soc_periodicity, std::fabs(val(sol, ev.soc.front()) - val(sol, ev.soc.back())));
            for (int t = 0; t < T; ++t)
                if (val(sol, ev.v_charge[static_cast<std::size_t>(t)]) > 0.5 &&
                    val(sol, ev.v_discharge[static_cast<std::size_t>(t)]) > 0.5)
                    out.exclusivity_ok = false;
        }

        for (std::size_t m = 0; m < unit.site_gas.size(); ++m) {
            if (val(sol, unit.site_gas[m]) > 0.5) continue;
            for (int t = 0; t < T; ++t)
                out.rp_gating = std::max(out.rp_gating,
                                         val(sol, unit.received_gas[m][static_cast<std::size_t>(t)]));
        }
        for (std::size_t n = 0; n < unit.site_elec.size(); ++n) {
            if (val(sol, unit.site_elec[n]) > 0.5) continue;
            for (int t = 0; t < T; ++t)
                out.rp_gating = std::max(out.rp_gating,
                                         val(sol, unit.received_elec[n][static_cast<std::size_t>(t)]));
        }
    }
    return out;
}

}  // namespace triplan::agents
