#include "triplan/caseio/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace triplan::caseio {

namespace {

struct Rng {
    std::mt19937_64 g;
    explicit Rng(std::uint64_t seed) : g(seed) {}

    // Hand-rolled mapping keeps draws identical across platforms.
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(g() >> 11) * 0x1.0p-53);
    }
    double draw(double lo, double hi) { return std::round(uniform(lo, hi) * 1000.0) / 1000.0; }
};

std::vector<double> wiggle(Rng& rng, int horizon, double base, double spread) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(horizon));
    for (int t = 0; t < horizon; ++t)
        out.push_back(std::round(base * rng.uniform(1.0 - spread, 1.0 + spread) * 1000.0) / 1000.0);
    return out;
}

double peak(const std::vector<double>& s) {
    double p = 0.0;
    for (const double v : s) p = std::max(p, v);
    return p;
}

double sum_of_peaks(const std::vector<std::vector<double>>& series) {
    double total = 0.0;
    for (const auto& s : series) total += peak(s);
    return total;
}

Device make_device(DeviceKind kind, std::initializer_list<std::pair<Carrier, double>> outputs,
                   double input_max, double cost) {
    Device d;
    d.kind = kind;
    for (const auto& [c, eff] : outputs) d.outputs[c] = eff;
    d.input_max = std::round(input_max * 1000.0) / 1000.0;
    d.cost = cost;
    return d;
}

RiesSpec make_district(Rng& rng, int horizon, const std::string& name, bool with_heat,
                       bool with_cold, bool with_gas_load) {
    RiesSpec r;
    r.name = name;
    r.loads[Carrier::electricity] = wiggle(rng, horizon, rng.draw(0.8, 1.5), 0.2);
    if (with_heat) r.loads[Carrier::heat] = wiggle(rng, horizon, rng.draw(0.5, 1.0), 0.2);
    if (with_cold) r.loads[Carrier::cold] = wiggle(rng, horizon, rng.draw(0.4, 0.8), 0.2);
    if (with_gas_load) r.loads[Carrier::gas] = wiggle(rng, horizon, rng.draw(0.3, 0.6), 0.2);

    const double e_peak = peak(r.loads[Carrier::electricity]);
    const double h_peak = with_heat ? peak(r.loads[Carrier::heat]) : 0.0;
    const double c_peak = with_cold ? peak(r.loads[Carrier::cold]) : 0.0;
    const double g_peak = with_gas_load ? peak(r.loads[Carrier::gas]) : 0.0;

    r.devices.push_back(make_device(DeviceKind::TL, {{Carrier::electricity, rng.draw(0.95, 0.99)}},
                                    2.0 * (e_peak + c_peak) + 1.0, rng.draw(0.005, 0.012)));
    if (with_heat) {
        const double eff = rng.draw(0.85, 0.95);
        r.devices.push_back(make_device(DeviceKind::GB, {{Carrier::heat, eff}},
                                        2.0 * h_peak / eff, rng.draw(0.006, 0.015)));
    }
    if (with_cold) {
        const double cop = rng.draw(2.5, 3.5);
        r.devices.push_back(make_device(DeviceKind::AC, {{Carrier::cold, cop}},
                                        2.0 * c_peak / cop + 0.2, rng.draw(0.004, 0.01)));
    }
    if (with_heat && with_cold) {
        r.devices.push_back(make_device(
            DeviceKind::CCHP,
            {{Carrier::electricity, rng.draw(0.28, 0.35)}, {Carrier::heat, rng.draw(0.35, 0.45)}},
            1.5 * (e_peak + h_peak), rng.draw(0.01, 0.02)));
    }
    if (with_gas_load)
        r.devices.push_back(make_device(DeviceKind::TP, {{Carrier::gas, 1.0}}, 1.5 * g_peak + 0.2,
                                        rng.draw(0.003, 0.008)));

    ResOption wt;
    wt.kind = ResKind::WT;
    wt.profile = wiggle(rng, horizon, rng.draw(0.25, 0.5), 0.4);
    wt.cost = rng.draw(0.0005, 0.001);
    wt.max_modules = 2;
    r.res.push_back(std::move(wt));

    EssOption bess;
    bess.kind = with_cold && !with_heat ? EssKind::CESS : EssKind::BESS;
    bess.eta_ch = rng.draw(0.88, 0.95);
    bess.eta_dis = rng.draw(0.88, 0.95);
    bess.charge_max = rng.draw(0.3, 0.5);
    bess.discharge_max = rng.draw(0.3, 0.5);
    bess.soc_min = rng.draw(0.02, 0.08);
    bess.soc_max = rng.draw(0.5, 0.9);
    bess.cost = rng.draw(0.01, 0.02);
    bess.max_modules = 1;
    r.ess.push_back(bess);

    return r;
}

}  // namespace

PlanningCase synth_case(std::uint64_t seed, Scale scale) {
    Rng rng(seed * 0x9E3779B97F4A7C15ULL + (scale == Scale::tiny ? 17 : 71));

    PlanningCase c;
    c.horizon = scale == Scale::tiny ? 2 : 4;
    c.segments = scale == Scale::tiny ? 2 : 3;
    c.price_electricity = 0.003;  // M$ per MWh, toy scale
    c.price_gas = 0.002;          // M$ per m3
    c.gas_mwh_per_m3 = 1.0;       // normalized gas units

    const int T = c.horizon;

    if (scale == Scale::tiny) {
        c.ries.push_back(make_district(rng, T, "RIES1", true, false, false));
    } else {
        c.ries.push_back(make_district(rng, T, "RIES1", true, false, true));   // no cold load
        c.ries.push_back(make_district(rng, T, "RIES2", false, true, false));  // no heat load
        c.ries.push_back(make_district(rng, T, "RIES3", true, true, false));   // mixed
    }

    const double cap_g = gas_channel_cap(c);
    const double cap_e = elec_channel_cap(c);

    // Gas side: a three-node chain, source at node 1.
    std::vector<std::vector<double>> gas_loads{
        std::vector<double>(static_cast<std::size_t>(T), 0.0),
        wiggle(rng, T, rng.draw(2.0, 3.5), 0.15),
        wiggle(rng, T, rng.draw(1.0, 2.0), 0.15),
    };
    const double gas_total = sum_of_peaks(gas_loads) + cap_g;
    for (int i = 0; i < 3; ++i) {
        GasNode n;
        n.id = i + 1;
        n.pressure_min = 1.0;
        n.pressure_max = 2.5;
        n.load = gas_loads[static_cast<std::size_t>(i)];
        c.gas.nodes.push_back(std::move(n));
    }
    {
        GasSource s;
        s.id = 1;
        s.node = 1;
        s.p_min = 0.0;
        s.p_max = std::round(1.5 * gas_total * 1000.0) / 1000.0;
        s.ramp_down = s.p_max;
        s.ramp_up = s.p_max;
        s.cost = rng.draw(0.001, 0.002);
        c.gas.sources.push_back(s);
    }
    const double pipe_cap = std::round(1.5 * gas_total * 1000.0) / 1000.0;
    // Pressure window gives (pi_max^2 - pi_min^2) = 5.25 of squared-pressure
    // headroom; W sized so a full-capacity flow needs at most ~2.4 of it.
    const double weymouth = std::round(pipe_cap / 1.5 * 1000.0) / 1000.0;
    auto make_pipe = [&](int id, int from, int to, bool candidate, bool compressor) {
        Pipe p;
        p.id = id;
        p.from = from;
        p.to = to;
        p.weymouth = weymouth;
        p.flow_max = pipe_cap;
        p.invest_cost = candidate ? rng.draw(0.03, 0.07) : 0.0;
        p.compressor_allowed = compressor;
        p.compressor_cost = compressor ? rng.draw(0.02, 0.04) : 0.0;
        return p;
    };
    c.gas.existing_pipes.push_back(make_pipe(1, 1, 2, false, true));
    c.gas.existing_pipes.push_back(make_pipe(2, 2, 3, false, false));
    c.gas.candidate_pipes.push_back(make_pipe(3, 1, 3, true, false));

    // Electric side: a three-bus chain with a candidate closing the ring.
    std::vector<std::vector<double>> bus_loads{
        std::vector<double>(static_cast<std::size_t>(T), 0.0),
        wiggle(rng, T, rng.draw(1.5, 3.0), 0.15),
        wiggle(rng, T, rng.draw(1.0, 2.0), 0.15),
    };
    const double elec_total = sum_of_peaks(bus_loads) + cap_e;
    for (int i = 0; i < 3; ++i) {
        Bus b;
        b.id = i + 1;
        b.load = bus_loads[static_cast<std::size_t>(i)];
        c.electric.buses.push_back(std::move(b));
    }
    c.electric.slack_bus = 1;
    {
        Generator g;
        g.id = 1;
        g.bus = 1;
        g.p_min = 0.0;
        g.p_max = std::round(1.5 * elec_total * 1000.0) / 1000.0;
        g.ramp_down = g.p_max;
        g.ramp_up = g.p_max;
        g.min_up = scale == Scale::tiny ? 1 : 2;
        g.min_down = scale == Scale::tiny ? 1 : 2;
        g.cost = rng.draw(0.001, 0.002);
        c.electric.generators.push_back(g);
    }
    auto make_line = [&](int id, int from, int to, bool candidate) {
        Line l;
        l.id = id;
        l.from = from;
        l.to = to;
        l.reactance = rng.draw(0.2, 0.3);
        l.flow_max = std::round(1.5 * elec_total * 1000.0) / 1000.0;
        l.invest_cost = candidate ? rng.draw(0.02, 0.05) : 0.0;
        return l;
    };
    c.electric.existing_lines.push_back(make_line(1, 1, 2, false));
    c.electric.existing_lines.push_back(make_line(2, 2, 3, false));
    c.electric.candidate_lines.push_back(make_line(3, 1, 3, true));

    for (auto& r : c.ries) {
        for (const auto& n : c.gas.nodes) r.site_cost_gas[n.id] = rng.draw(0.001, 0.008);
        for (const auto& b : c.electric.buses) r.site_cost_elec[b.id] = rng.draw(0.001, 0.008);
    }

    return c;
}

}  // namespace triplan::caseio
