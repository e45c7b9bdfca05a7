#include "triplan/agents/ries.hpp"

#include <algorithm>
#include <cmath>

#include "triplan/agents/pwl.hpp"
#include "triplan/error.hpp"

namespace triplan::agents {

using caseio::Carrier;
using caseio::DeviceKind;
using caseio::EssKind;
using milp::LinearExpression;
using milp::Model;
using milp::VarId;
using milp::VarKind;

namespace {

constexpr Carrier kCarriers[] = {Carrier::electricity, Carrier::heat, Carrier::cold, Carrier::gas};

const std::vector<double>* load_series(const caseio::RiesSpec& spec, Carrier k) {
    const auto it = spec.loads.find(k);
    return it == spec.loads.end() ? nullptr : &it->second;
}

}  // namespace

double ries_gas_cap(const caseio::RiesSpec& spec) {
    double cap = 0.0;
    for (const auto& d : spec.devices)
        if (caseio::device_input_is_gas(d.kind)) cap += d.input_max;
    return cap;
}

double ries_elec_cap(const caseio::RiesSpec& spec) {
    double cap = 0.0;
    for (const auto& d : spec.devices)
        if (d.kind == DeviceKind::TL || d.kind == DeviceKind::AC) cap += d.input_max;
    return cap;
}

void emit_hub(Model& model, RiesUnitVars& unit, const caseio::RiesSpec& spec,
              double gas_mwh_per_m3, int horizon, const std::string& tag) {
    for (std::size_t i = 0; i < spec.devices.size(); ++i) {
        const auto& d = spec.devices[i];
        RiesDeviceVars dv;
        dv.built = model.add_variable(VarKind::binary, 0.0, 1.0,
                                      tag + ".build[" + caseio::to_string(d.kind) + "]");
        for (int t = 0; t < horizon; ++t) {
            const VarId in = model.add_variable(
                VarKind::continuous, 0.0, d.input_max,
                tag + ".in[" + caseio::to_string(d.kind) + ",t" + std::to_string(t) + "]");
            dv.input.push_back(in);
            LinearExpression gate;  // input <= built * cap
            gate.add(in, 1.0);
            gate.add(dv.built, -d.input_max);
            model.add_le(std::move(gate), 0.0,
                         tag + ".ingate[" + caseio::to_string(d.kind) + ",t" + std::to_string(t) + "]");
        }
        unit.devices.push_back(std::move(dv));
    }

    // Conversion rows: out_k = sum_can H[k][can] * (heating value if gas-fired) * in_can.
    for (const Carrier k : kCarriers) {
        std::vector<VarId> outs;
        double out_cap = 0.0;
        for (std::size_t i = 0; i < spec.devices.size(); ++i) {
            const auto it = spec.devices[i].outputs.find(k);
            if (it == spec.devices[i].outputs.end()) continue;
            const double conv = caseio::device_input_is_gas(spec.devices[i].kind) &&
                                        k != Carrier::gas
                                    ? gas_mwh_per_m3
                                    : 1.0;
            out_cap += it->second * conv * spec.devices[i].input_max;
        }
        for (int t = 0; t < horizon; ++t) {
            const VarId out = model.add_variable(
                VarKind::continuous, 0.0, out_cap,
                tag + ".out[" + caseio::to_string(k) + ",t" + std::to_string(t) + "]");
            outs.push_back(out);
            LinearExpression hub;
            hub.add(out, 1.0);
            for (std::size_t i = 0; i < spec.devices.size(); ++i) {
                const auto it = spec.devices[i].outputs.find(k);
                if (it == spec.devices[i].outputs.end()) continue;
                const double conv = caseio::device_input_is_gas(spec.devices[i].kind) &&
                                            k != Carrier::gas
                                        ? gas_mwh_per_m3
                                        : 1.0;
                hub.add(unit.devices[i].input[static_cast<std::size_t>(t)], -it->second * conv);
            }
            model.add_eq(std::move(hub), 0.0,
                         tag + ".hub[" + caseio::to_string(k) + ",t" + std::to_string(t) + "]");
        }
        unit.output.push_back(std::move(outs));
    }

    for (const auto& o : spec.res) {
        RiesResVars rv;
        rv.modules = model.add_variable(VarKind::integer, 0.0, o.max_modules,
                                        tag + ".modules[" + caseio::to_string(o.kind) + "]");
        double profile_peak = 0.0;
        for (const double p : o.profile) profile_peak = std::max(profile_peak, p);
        for (int t = 0; t < horizon; ++t) {
            const VarId out = model.add_variable(
                VarKind::continuous, 0.0, o.max_modules * profile_peak,
                tag + ".res[" + caseio::to_string(o.kind) + ",t" + std::to_string(t) + "]");
            rv.output.push_back(out);
            LinearExpression cap;  // output <= modules * profile_t
            cap.add(out, 1.0);
            cap.add(rv.modules, -o.profile[static_cast<std::size_t>(t)]);
            model.add_le(std::move(cap), 0.0,
                         tag + ".rescap[" + caseio::to_string(o.kind) + ",t" + std::to_string(t) + "]");
        }
        unit.res.push_back(std::move(rv));
    }
}

void emit_ess(Model& model, RiesUnitVars& unit, const caseio::RiesSpec& spec, int horizon,
              const std::string& tag) {
    for (const auto& o : spec.ess) {
        RiesEssVars ev;
        const std::string et = tag + "." + caseio::to_string(o.kind);
        ev.modules = model.add_variable(VarKind::integer, 0.0, o.max_modules, et + ".modules");
        const double ch_big = o.max_modules * o.charge_max;
        const double dis_big = o.max_modules * o.discharge_max;
        for (int t = 0; t < horizon; ++t) {
            ev.charge.push_back(
                model.add_variable(VarKind::continuous, 0.0, ch_big, et + ".ch[" + std::to_string(t) + "]"));
            ev.discharge.push_back(model.add_variable(VarKind::continuous, 0.0, dis_big,
                                                      et + ".dis[" + std::to_string(t) + "]"));
            ev.soc.push_back(model.add_variable(VarKind::continuous, 0.0,
                                                o.max_modules * o.soc_max,
                                                et + ".soc[" + std::to_string(t) + "]"));
            ev.v_charge.push_back(model.add_variable(VarKind::binary, 0.0, 1.0,
                                                     et + ".vch[" + std::to_string(t) + "]"));
            ev.v_discharge.push_back(model.add_variable(VarKind::binary, 0.0, 1.0,
                                                        et + ".vdis[" + std::to_string(t) + "]"));
        }
        for (int t = 0; t < horizon; ++t) {
            LinearExpression chcap;  // charge <= modules * per-module cap
            chcap.add(ev.charge[static_cast<std::size_t>(t)], 1.0);
            chcap.add(ev.modules, -o.charge_max);
            model.add_le(std::move(chcap), 0.0, et + ".chcap[" + std::to_string(t) + "]");
            LinearExpression discap;
            discap.add(ev.discharge[static_cast<std::size_t>(t)], 1.0);
            discap.add(ev.modules, -o.discharge_max);
            model.add_le(std::move(discap), 0.0, et + ".discap[" + std::to_string(t) + "]");

            LinearExpression chgate;  // charge <= v_ch * big
            chgate.add(ev.charge[static_cast<std::size_t>(t)], 1.0);
            chgate.add(ev.v_charge[static_cast<std::size_t>(t)], -ch_big);
            model.add_le(std::move(chgate), 0.0, et + ".chgate[" + std::to_string(t) + "]");
            LinearExpression disgate;
            disgate.add(ev.discharge[static_cast<std::size_t>(t)], 1.0);
            disgate.add(ev.v_discharge[static_cast<std::size_t>(t)], -dis_big);
            model.add_le(std::move(disgate), 0.0, et + ".disgate[" + std::to_string(t) + "]");

            LinearExpression excl;  // no simultaneous charge and discharge
            excl.add(ev.v_charge[static_cast<std::size_t>(t)], 1.0);
            excl.add(ev.v_discharge[static_cast<std::size_t>(t)], 1.0);
            model.add_le(std::move(excl), 1.0, et + ".excl[" + std::to_string(t) + "]");

            LinearExpression soclb;  // modules * soc_min <= soc
            soclb.add(ev.soc[static_cast<std::size_t>(t)], 1.0);
            soclb.add(ev.modules, -o.soc_min);
            model.add_ge(std::move(soclb), 0.0, et + ".soclb[" + std::to_string(t) + "]");
            LinearExpression socub;
            socub.add(ev.soc[static_cast<std::size_t>(t)], 1.0);
            socub.add(ev.modules, -o.soc_max);
            model.add_le(std::move(socub), 0.0, et + ".socub[" + std::to_string(t) + "]");

            // State recursion; period 1 anchors on the final state (cyclic).
            const int prev = t == 0 ? horizon - 1 : t - 1;
            if (horizon > 1 || t > 0) {
                LinearExpression rec;
                rec.add(ev.soc[static_cast<std::size_t>(t)], 1.0);
                rec.add(ev.soc[static_cast<std::size_t>(prev)], -1.0);
                rec.add(ev.charge[static_cast<std::size_t>(t)], -o.eta_ch);
                rec.add(ev.discharge[static_cast<std::size_t>(t)], 1.0 / o.eta_dis);
                model.add_eq(std::move(rec), 0.0, et + ".soc_rec[" + std::to_string(t) + "]");
            } else {
                // T = 1: the cyclic recursion collapses to eta_ch * ch = dis / eta_dis.
                LinearExpression rec;
                rec.add(ev.charge[static_cast<std::size_t>(t)], o.eta_ch);
                rec.add(ev.discharge[static_cast<std::size_t>(t)], -1.0 / o.eta_dis);
                model.add_eq(std::move(rec), 0.0, et + ".soc_rec[" + std::to_string(t) + "]");
            }
        }
        if (horizon > 1) {
            LinearExpression cyc;  // SOC_1 = SOC_T
            cyc.add(ev.soc.front(), 1.0);
            cyc.add(ev.soc.back(), -1.0);
            model.add_eq(std::move(cyc), 0.0, et + ".soc_cycle");
        }
        unit.ess.push_back(std::move(ev));
    }
}

void emit_loads_and_siting(Model& model, RiesUnitVars& unit, const caseio::RiesSpec& spec,
                           const caseio::PlanningCase& c, const std::string& tag) {
    const int T = c.horizon;

    // Carrier balances on the supply side.
    for (const Carrier k : kCarriers) {
        const std::vector<double>* load = load_series(spec, k);
        for (int t = 0; t < T; ++t) {
            LinearExpression bal;
            bal.add(unit.output[static_cast<std::size_t>(carrier_index(k))]
                               [static_cast<std::size_t>(t)],
                    1.0);
            for (std::size_t e = 0; e < spec.ess.size(); ++e) {
                if (caseio::ess_carrier(spec.ess[e].kind) != k) continue;
                bal.add(unit.ess[e].charge[static_cast<std::size_t>(t)], -1.0);
                bal.add(unit.ess[e].discharge[static_cast<std::size_t>(t)], 1.0);
            }
            if (k == Carrier::electricity)
                for (const auto& rv : unit.res)
                    bal.add(rv.output[static_cast<std::size_t>(t)], 1.0);
            model.add_eq(std::move(bal), load ? (*load)[static_cast<std::size_t>(t)] : 0.0,
                         tag + ".balance[" + caseio::to_string(k) + ",t" + std::to_string(t) + "]");
        }
    }

    // Siting binaries; every district connects to at least one node and bus.
    const double gas_cap = ries_gas_cap(spec);
    const double elec_cap = ries_elec_cap(spec);
    LinearExpression at_least_one_node, at_least_one_bus;
    for (const auto& node : c.gas.nodes) {
        unit.site_gas.push_back(model.add_variable(
            VarKind::binary, 0.0, 1.0, tag + ".site_gas[n" + std::to_string(node.id) + "]"));
        at_least_one_node.add(unit.site_gas.back(), 1.0);
    }
    for (const auto& bus : c.electric.buses) {
        unit.site_elec.push_back(model.add_variable(
            VarKind::binary, 0.0, 1.0, tag + ".site_elec[b" + std::to_string(bus.id) + "]"));
        at_least_one_bus.add(unit.site_elec.back(), 1.0);
    }
    model.add_ge(std::move(at_least_one_node), 1.0, tag + ".sited_gas");
    model.add_ge(std::move(at_least_one_bus), 1.0, tag + ".sited_elec");

    // Received power, gated by the siting decision.
    for (std::size_t m = 0; m < c.gas.nodes.size(); ++m) {
        std::vector<VarId> by_t;
        for (int t = 0; t < T; ++t) {
            const VarId rp = model.add_variable(
                VarKind::continuous, 0.0, gas_cap,
                tag + ".rp_gas[n" + std::to_string(c.gas.nodes[m].id) + ",t" + std::to_string(t) + "]");
            by_t.push_back(rp);
            LinearExpression gate;
            gate.add(rp, 1.0);
            gate.add(unit.site_gas[m], -gas_cap);
            model.add_le(std::move(gate), 0.0,
                         tag + ".rp_gas_gate[n" + std::to_string(c.gas.nodes[m].id) + ",t" +
                             std::to_string(t) + "]");
        }
        unit.received_gas.push_back(std::move(by_t));
    }
    for (std::size_t n = 0; n < c.electric.buses.size(); ++n) {
        std::vector<VarId> by_t;
        for (int t = 0; t < T; ++t) {
            const VarId rp = model.add_variable(
                VarKind::continuous, 0.0, elec_cap,
                tag + ".rp_elec[b" + std::to_string(c.electric.buses[n].id) + ",t" +
                    std::to_string(t) + "]");
            by_t.push_back(rp);
            LinearExpression gate;
            gate.add(rp, 1.0);
            gate.add(unit.site_elec[n], -elec_cap);
            model.add_le(std::move(gate), 0.0,
                         tag + ".rp_elec_gate[b" + std::to_string(c.electric.buses[n].id) + ",t" +
                             std::to_string(t) + "]");
        }
        unit.received_elec.push_back(std::move(by_t));
    }

    // Input-side chains: received power feeds the matching device inputs.
    for (int t = 0; t < T; ++t) {
        LinearExpression gas_chain;
        for (const auto& by_t : unit.received_gas) gas_chain.add(by_t[static_cast<std::size_t>(t)], 1.0);
        for (std::size_t i = 0; i < spec.devices.size(); ++i)
            if (caseio::device_input_is_gas(spec.devices[i].kind))
                gas_chain.add(unit.devices[i].input[static_cast<std::size_t>(t)], -1.0);
        model.add_eq(std::move(gas_chain), 0.0, tag + ".gas_chain[t" + std::to_string(t) + "]");

        LinearExpression elec_chain;
        for (const auto& by_t : unit.received_elec)
            elec_chain.add(by_t[static_cast<std::size_t>(t)], 1.0);
        for (std::size_t i = 0; i < spec.devices.size(); ++i)
            if (spec.devices[i].kind == DeviceKind::TL || spec.devices[i].kind == DeviceKind::AC)
                elec_chain.add(unit.devices[i].input[static_cast<std::size_t>(t)], -1.0);
        model.add_eq(std::move(elec_chain), 0.0, tag + ".elec_chain[t" + std::to_string(t) + "]");
    }
}

RiesVars append_ries_model(Model& model, const caseio::PlanningCase& c,
                           const RiesAdmmContext* admm) {
    const int T = c.horizon;
    const int n_nodes = static_cast<int>(c.gas.nodes.size());
    const int n_buses = static_cast<int>(c.electric.buses.size());
    const int n_ries = static_cast<int>(c.ries.size());
    RiesVars vars;

    if (admm) {
        if (!admm->lambda_gas || !admm->ip_gas || !admm->lambda_elec || !admm->ip_elec)
            throw ShapeError("ries agent: admm context incomplete");
        const ChannelArray want_g(n_nodes, n_ries, T), want_e(n_buses, n_ries, T);
        if (!admm->lambda_gas->same_shape(want_g) || !admm->ip_gas->same_shape(want_g) ||
            !admm->lambda_elec->same_shape(want_e) || !admm->ip_elec->same_shape(want_e))
            throw ShapeError("ries agent: consensus arrays do not match case dimensions");
    }

    for (int h = 0; h < n_ries; ++h) {
        const auto& spec = c.ries[static_cast<std::size_t>(h)];
        const std::string tag = "ries[" + std::to_string(h) + "]";
        RiesUnitVars unit;
        emit_hub(model, unit, spec, c.gas_mwh_per_m3, T, tag);
        emit_ess(model, unit, spec, T, tag);
        emit_loads_and_siting(model, unit, spec, c, tag);
        vars.units.push_back(std::move(unit));
    }

    auto& obj = model.objective();
    for (int h = 0; h < n_ries; ++h) {
        const auto& spec = c.ries[static_cast<std::size_t>(h)];
        const auto& unit = vars.units[static_cast<std::size_t>(h)];
        for (std::size_t i = 0; i < spec.devices.size(); ++i)
            obj.add(unit.devices[i].built, spec.devices[i].cost);
        for (std::size_t i = 0; i < spec.res.size(); ++i)
            obj.add(unit.res[i].modules, spec.res[i].cost);
        for (std::size_t i = 0; i < spec.ess.size(); ++i)
            obj.add(unit.ess[i].modules, spec.ess[i].cost);
        for (std::size_t m = 0; m < c.gas.nodes.size(); ++m) {
            const auto it = spec.site_cost_gas.find(c.gas.nodes[m].id);
            if (it != spec.site_cost_gas.end()) obj.add(unit.site_gas[m], it->second);
        }
        for (std::size_t n = 0; n < c.electric.buses.size(); ++n) {
            const auto it = spec.site_cost_elec.find(c.electric.buses[n].id);
            if (it != spec.site_cost_elec.end()) obj.add(unit.site_elec[n], it->second);
        }
        for (int t = 0; t < T; ++t) {
            for (const auto& by_t : unit.received_gas)
                obj.add(by_t[static_cast<std::size_t>(t)], c.price_gas);
            for (const auto& by_t : unit.received_elec)
                obj.add(by_t[static_cast<std::size_t>(t)], c.price_electricity);
        }
    }

    if (admm) {
        for (int h = 0; h < n_ries; ++h) {
            const auto& spec = c.ries[static_cast<std::size_t>(h)];
            const auto& unit = vars.units[static_cast<std::size_t>(h)];
            const QuadPenaltyGrid grid_g =
                make_quad_grid(std::max(1.0, ries_gas_cap(spec)), admm->quad_knots);
            const QuadPenaltyGrid grid_e =
                make_quad_grid(std::max(1.0, ries_elec_cap(spec)), admm->quad_knots);
            for (int m = 0; m < n_nodes; ++m)
                for (int t = 0; t < T; ++t)
                    emit_consensus_penalty(model,
                                           unit.received_gas[static_cast<std::size_t>(m)]
                                                            [static_cast<std::size_t>(t)],
                                           admm->lambda_gas->at(m, h, t), admm->ip_gas->at(m, h, t),
                                           admm->rho_gas, grid_g,
                                           "ries.pen_g[n" + std::to_string(m) + ",h" +
                                               std::to_string(h) + ",t" + std::to_string(t) + "]");
            for (int n = 0; n < n_buses; ++n)
                for (int t = 0; t < T; ++t)
                    emit_consensus_penalty(model,
                                           unit.received_elec[static_cast<std::size_t>(n)]
                                                             [static_cast<std::size_t>(t)],
                                           admm->lambda_elec->at(n, h, t),
                                           admm->ip_elec->at(n, h, t), admm->rho_elec, grid_e,
                                           "ries.pen_e[b" + std::to_string(n) + ",h" +
                                               std::to_string(h) + ",t" + std::to_string(t) + "]");
        }
    }

    return vars;
}

RiesBuild build_ries_model(const caseio::PlanningCase& c, const RiesAdmmContext* admm) {
    RiesBuild out;
    out.vars = append_ries_model(out.model, c, admm);
    return out;
}

RiesPlan extract_ries_plan(const caseio::PlanningCase& c, const RiesVars& vars,
                           const milp::Solution& sol) {
    RiesPlan plan;
    const int T = c.horizon;
    const int n_nodes = static_cast<int>(c.gas.nodes.size());
    const int n_buses = static_cast<int>(c.electric.buses.size());
    const int n_ries = static_cast<int>(c.ries.size());
    auto value = [&](VarId v) { return sol.values[static_cast<std::size_t>(v.index)]; };

    plan.received_gas = ChannelArray(n_nodes, n_ries, T);
    plan.received_elec = ChannelArray(n_buses, n_ries, T);

    for (int h = 0; h < n_ries; ++h) {
        const auto& spec = c.ries[static_cast<std::size_t>(h)];
        const auto& unit = vars.units[static_cast<std::size_t>(h)];
        RiesUnitPlan up;
        up.name = spec.name;
        for (std::size_t i = 0; i < spec.devices.size(); ++i) {
            if (value(unit.devices[i].built) > 0.5) {
                up.device_capacity[spec.devices[i].kind] = spec.devices[i].input_max;
                up.invest_cost += spec.devices[i].cost;
            }
        }
        for (std::size_t i = 0; i < spec.res.size(); ++i) {
            const int modules = static_cast<int>(std::lround(value(unit.res[i].modules)));
            up.res_modules[spec.res[i].kind] = modules;
            up.invest_cost += spec.res[i].cost * modules;
        }
        for (std::size_t i = 0; i < spec.ess.size(); ++i) {
            const int modules = static_cast<int>(std::lround(value(unit.ess[i].modules)));
            up.ess_modules[spec.ess[i].kind] = modules;
            up.invest_cost += spec.ess[i].cost * modules;
        }
        for (std::size_t m = 0; m < c.gas.nodes.size(); ++m) {
            if (value(unit.site_gas[m]) > 0.5) {
                up.gas_nodes.push_back(c.gas.nodes[m].id);
                const auto it = spec.site_cost_gas.find(c.gas.nodes[m].id);
                if (it != spec.site_cost_gas.end()) up.siting_cost += it->second;
            }
        }
        for (std::size_t n = 0; n < c.electric.buses.size(); ++n) {
            if (value(unit.site_elec[n]) > 0.5) {
                up.buses.push_back(c.electric.buses[n].id);
                const auto it = spec.site_cost_elec.find(c.electric.buses[n].id);
                if (it != spec.site_cost_elec.end()) up.siting_cost += it->second;
            }
        }
        for (int m = 0; m < n_nodes; ++m)
            for (int t = 0; t < T; ++t) {
                const double rp = value(unit.received_gas[static_cast<std::size_t>(m)]
                                                         [static_cast<std::size_t>(t)]);
                plan.received_gas.at(m, h, t) = rp;
                up.gas_cost += c.price_gas * rp;
            }
        for (int n = 0; n < n_buses; ++n)
            for (int t = 0; t < T; ++t) {
                const double rp = value(unit.received_elec[static_cast<std::size_t>(n)]
                                                          [static_cast<std::size_t>(t)]);
                plan.received_elec.at(n, h, t) = rp;
                up.electricity_cost += c.price_electricity * rp;
            }

        plan.invest_cost += up.invest_cost;
        plan.siting_cost += up.siting_cost;
        plan.electricity_cost += up.electricity_cost;
        plan.gas_cost += up.gas_cost;
        plan.units.push_back(std::move(up));
    }
    return plan;
}

}  // namespace triplan::agents
