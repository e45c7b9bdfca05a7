#include "triplan/caseio/validate.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>

namespace triplan::caseio {

bool ValidationReport::has_errors() const noexcept {
    return std::any_of(findings.begin(), findings.end(),
                       [](const Finding& f) { return f.severity == Severity::error; });
}

void ValidationReport::add(Severity s, std::string location, std::string message) {
    findings.push_back(Finding{s, std::move(location), std::move(message)});
}

void ValidationReport::print(std::ostream& out) const {
    for (const auto& f : findings)
        out << (f.severity == Severity::error ? "error" : "warning") << "  " << f.location << ": "
            << f.message << "\n";
}

namespace {

bool series_ok(const std::vector<double>& s, int horizon, bool nonneg) {
    if (static_cast<int>(s.size()) != horizon) return false;
    if (nonneg)
        for (const double v : s)
            if (v < 0.0 || !std::isfinite(v)) return false;
    return true;
}

// Hub column patterns: which carriers each device may feed.
bool output_allowed(DeviceKind k, Carrier c) {
    switch (k) {
        case DeviceKind::TL: return c == Carrier::electricity;
        case DeviceKind::TP: return c == Carrier::gas;
        case DeviceKind::GB: return c == Carrier::heat;
        case DeviceKind::AC: return c == Carrier::cold;
        case DeviceKind::CCHP:
            return c == Carrier::electricity || c == Carrier::heat || c == Carrier::cold;
    }
    return false;
}

}  // namespace

ValidationReport validate_case(const PlanningCase& c) {
    ValidationReport rep;
    const int T = c.horizon;

    if (T < 1) rep.add(Severity::error, "horizon", "must be at least 1");
    if (c.segments < 1) rep.add(Severity::error, "segments", "must be at least 1");
    if (c.price_electricity < 0.0) rep.add(Severity::error, "price_electricity", "must be >= 0");
    if (c.price_gas < 0.0) rep.add(Severity::error, "price_gas", "must be >= 0");
    if (c.gas_mwh_per_m3 <= 0.0) rep.add(Severity::error, "gas_mwh_per_m3", "must be > 0");

    std::set<int> node_ids, bus_ids;
    for (std::size_t i = 0; i < c.gas.nodes.size(); ++i) {
        const auto& n = c.gas.nodes[i];
        const std::string loc = "gas.nodes[" + std::to_string(i) + "]";
        if (!node_ids.insert(n.id).second) rep.add(Severity::error, loc, "duplicate node id");
        if (!(n.pressure_min > 0.0) || n.pressure_min > n.pressure_max)
            rep.add(Severity::error, loc, "pressure bounds must satisfy 0 < min <= max");
        if (!series_ok(n.load, T, true))
            rep.add(Severity::error, loc + ".load", "must be a nonnegative series of length T");
    }
    for (std::size_t i = 0; i < c.gas.sources.size(); ++i) {
        const auto& s = c.gas.sources[i];
        const std::string loc = "gas.sources[" + std::to_string(i) + "]";
        if (!node_ids.contains(s.node)) rep.add(Severity::error, loc, "unknown node id");
        if (s.p_min > s.p_max || s.p_min < 0.0)
            rep.add(Severity::error, loc, "output bounds must satisfy 0 <= min <= max");
        if (s.ramp_down < 0.0 || s.ramp_up < 0.0) rep.add(Severity::error, loc, "ramps must be >= 0");
        if (s.cost < 0.0) rep.add(Severity::error, loc, "cost must be >= 0");
    }
    auto check_pipes = [&](const std::vector<Pipe>& pipes, const std::string& group, bool candidate) {
        for (std::size_t i = 0; i < pipes.size(); ++i) {
            const auto& p = pipes[i];
            const std::string loc = group + "[" + std::to_string(i) + "]";
            if (!node_ids.contains(p.from) || !node_ids.contains(p.to))
                rep.add(Severity::error, loc, "unknown node id");
            if (p.from == p.to) rep.add(Severity::error, loc, "self-loop pipe");
            if (!(p.weymouth > 0.0)) rep.add(Severity::error, loc, "weymouth coefficient must be > 0");
            if (!(p.flow_max > 0.0)) rep.add(Severity::error, loc, "flow_max must be > 0");
            if (candidate && p.invest_cost < 0.0)
                rep.add(Severity::error, loc, "invest_cost must be >= 0");
            if (p.compressor_allowed && p.compressor_cost < 0.0)
                rep.add(Severity::error, loc, "compressor_cost must be >= 0");
        }
    };
    check_pipes(c.gas.existing_pipes, "gas.existing_pipes", false);
    check_pipes(c.gas.candidate_pipes, "gas.candidate_pipes", true);

    for (std::size_t i = 0; i < c.electric.buses.size(); ++i) {
        const auto& b = c.electric.buses[i];
        const std::string loc = "electric.buses[" + std::to_string(i) + "]";
        if (!bus_ids.insert(b.id).second) rep.add(Severity::error, loc, "duplicate bus id");
        if (!series_ok(b.load, T, true))
            rep.add(Severity::error, loc + ".load", "must be a nonnegative series of length T");
    }
    if (!bus_ids.contains(c.electric.slack_bus))
        rep.add(Severity::error, "electric.slack_bus", "must name an existing bus");
    for (std::size_t i = 0; i < c.electric.generators.size(); ++i) {
        const auto& g = c.electric.generators[i];
        const std::string loc = "electric.generators[" + std::to_string(i) + "]";
        if (!bus_ids.contains(g.bus)) rep.add(Severity::error, loc, "unknown bus id");
        if (g.p_min > g.p_max || g.p_min < 0.0)
            rep.add(Severity::error, loc, "output bounds must satisfy 0 <= min <= max");
        if (g.min_up < 1 || g.min_down < 1)
            rep.add(Severity::error, loc, "min_up and min_down must be >= 1");
        if (g.ramp_down < 0.0 || g.ramp_up < 0.0) rep.add(Severity::error, loc, "ramps must be >= 0");
        if (g.cost < 0.0) rep.add(Severity::error, loc, "cost must be >= 0");
    }
    auto check_lines = [&](const std::vector<Line>& lines, const std::string& group) {
        for (std::size_t i = 0; i < lines.size(); ++i) {
            const auto& l = lines[i];
            const std::string loc = group + "[" + std::to_string(i) + "]";
            if (!bus_ids.contains(l.from) || !bus_ids.contains(l.to))
                rep.add(Severity::error, loc, "unknown bus id");
            if (l.from == l.to) rep.add(Severity::error, loc, "self-loop line");
            if (!(l.reactance > 0.0)) rep.add(Severity::error, loc, "reactance must be > 0");
            if (!(l.flow_max > 0.0)) rep.add(Severity::error, loc, "flow_max must be > 0");
            if (l.invest_cost < 0.0) rep.add(Severity::error, loc, "invest_cost must be >= 0");
        }
    };
    check_lines(c.electric.existing_lines, "electric.existing_lines");
    check_lines(c.electric.candidate_lines, "electric.candidate_lines");

    for (std::size_t h = 0; h < c.ries.size(); ++h) {
        const auto& r = c.ries[h];
        const std::string rl = "ries[" + std::to_string(h) + "]";
        std::set<DeviceKind> seen_devices;
        for (std::size_t i = 0; i < r.devices.size(); ++i) {
            const auto& d = r.devices[i];
            const std::string loc = rl + ".devices[" + std::to_string(i) + "]";
            if (!seen_devices.insert(d.kind).second)
                rep.add(Severity::error, loc, std::string("duplicate device kind ") + to_string(d.kind));
            for (const auto& [carrier, eff] : d.outputs) {
                if (eff < 0.0)
                    rep.add(Severity::error, loc, "hub efficiencies must be >= 0");
                if (!output_allowed(d.kind, carrier))
                    rep.add(Severity::error, loc,
                            std::string("device ") + to_string(d.kind) + " cannot feed carrier " +
                                to_string(carrier));
            }
            if (d.input_max < 0.0) rep.add(Severity::error, loc, "input_max must be >= 0");
            if (d.cost < 0.0) rep.add(Severity::error, loc, "cost must be >= 0");
        }
        std::set<ResKind> seen_res;
        for (std::size_t i = 0; i < r.res.size(); ++i) {
            const auto& o = r.res[i];
            const std::string loc = rl + ".res[" + std::to_string(i) + "]";
            if (!seen_res.insert(o.kind).second) rep.add(Severity::error, loc, "duplicate renewable kind");
            if (!series_ok(o.profile, T, true))
                rep.add(Severity::error, loc + ".profile", "must be a nonnegative series of length T");
            if (o.max_modules < 0) rep.add(Severity::error, loc, "max_modules must be >= 0");
            if (o.cost < 0.0) rep.add(Severity::error, loc, "cost must be >= 0");
        }
        std::set<EssKind> seen_ess;
        for (std::size_t i = 0; i < r.ess.size(); ++i) {
            const auto& o = r.ess[i];
            const std::string loc = rl + ".ess[" + std::to_string(i) + "]";
            if (!seen_ess.insert(o.kind).second) rep.add(Severity::error, loc, "duplicate storage kind");
            if (!(o.eta_ch > 0.0) || o.eta_ch > 1.0)
                rep.add(Severity::error, loc + ".eta_ch", "charge efficiency must satisfy 0 < eta <= 1");
            if (!(o.eta_dis > 0.0) || o.eta_dis > 1.0)
                rep.add(Severity::error, loc + ".eta_dis",
                        "discharge efficiency must satisfy 0 < eta <= 1");
            if (o.soc_min < 0.0 || o.soc_min > o.soc_max)
                rep.add(Severity::error, loc, "state-of-charge bounds must satisfy 0 <= min <= max");
            if (o.charge_max < 0.0 || o.discharge_max < 0.0)
                rep.add(Severity::error, loc, "charge/discharge limits must be >= 0");
            if (o.max_modules < 0) rep.add(Severity::error, loc, "max_modules must be >= 0");
            if (o.cost < 0.0) rep.add(Severity::error, loc, "cost must be >= 0");
        }
        for (const auto& [carrier, series] : r.loads)
            if (!series_ok(series, T, true))
                rep.add(Severity::error, rl + ".loads." + to_string(carrier),
                        "must be a nonnegative series of length T");
        for (const auto& [id, cost] : r.site_cost_gas) {
            if (!node_ids.contains(id))
                rep.add(Severity::error, rl + ".site_cost_gas", "unknown node id " + std::to_string(id));
            if (cost < 0.0) rep.add(Severity::error, rl + ".site_cost_gas", "cost must be >= 0");
        }
        for (const auto& [id, cost] : r.site_cost_elec) {
            if (!bus_ids.contains(id))
                rep.add(Severity::error, rl + ".site_cost_elec", "unknown bus id " + std::to_string(id));
            if (cost < 0.0) rep.add(Severity::error, rl + ".site_cost_elec", "cost must be >= 0");
        }
    }

    return rep;
}

}  // namespace triplan::caseio
