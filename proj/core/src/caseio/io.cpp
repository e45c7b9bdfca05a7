#include "triplan/caseio/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "triplan/error.hpp"

namespace triplan::caseio {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw CaseError(where + ": " + what);
}

const json& need(const json& j, const char* key, const std::string& where) {
    const auto it = j.find(key);
    if (it == j.end()) fail(where, std::string("missing field '") + key + "'");
    return *it;
}

double num(const json& j, const char* key, const std::string& where) {
    const auto& v = need(j, key, where);
    if (!v.is_number()) fail(where + "." + key, "expected a number");
    return v.get<double>();
}

double num_or(const json& j, const char* key, double fallback) {
    const auto it = j.find(key);
    return it == j.end() ? fallback : it->get<double>();
}

int integer(const json& j, const char* key, const std::string& where) {
    const auto& v = need(j, key, where);
    if (!v.is_number_integer()) fail(where + "." + key, "expected an integer");
    return v.get<int>();
}

std::vector<double> series(const json& j, const char* key, int horizon, const std::string& where) {
    const auto& v = need(j, key, where);
    if (!v.is_array()) fail(where + "." + key, "expected an array");
    std::vector<double> out = v.get<std::vector<double>>();
    if (static_cast<int>(out.size()) != horizon)
        fail(where + "." + key, "series length " + std::to_string(out.size()) +
                                    " does not match horizon " + std::to_string(horizon));
    return out;
}

Carrier carrier_from(const std::string& s, const std::string& where) {
    if (s == "e") return Carrier::electricity;
    if (s == "h") return Carrier::heat;
    if (s == "c") return Carrier::cold;
    if (s == "g") return Carrier::gas;
    fail(where, "unknown carrier '" + s + "' (expected e, h, c or g)");
}

DeviceKind device_from(const std::string& s, const std::string& where) {
    if (s == "TL") return DeviceKind::TL;
    if (s == "TP") return DeviceKind::TP;
    if (s == "CCHP") return DeviceKind::CCHP;
    if (s == "GB") return DeviceKind::GB;
    if (s == "AC") return DeviceKind::AC;
    fail(where, "unknown device kind '" + s + "'");
}

ResKind res_from(const std::string& s, const std::string& where) {
    if (s == "WT") return ResKind::WT;
    if (s == "PV") return ResKind::PV;
    fail(where, "unknown renewable kind '" + s + "'");
}

EssKind ess_from(const std::string& s, const std::string& where) {
    if (s == "BESS") return EssKind::BESS;
    if (s == "TESS") return EssKind::TESS;
    if (s == "CESS") return EssKind::CESS;
    fail(where, "unknown storage kind '" + s + "'");
}

Pipe parse_pipe(const json& j, bool candidate, const std::string& where) {
    Pipe p;
    p.id = integer(j, "id", where);
    p.from = integer(j, "from", where);
    p.to = integer(j, "to", where);
    p.weymouth = num(j, "weymouth", where);
    p.flow_max = num(j, "flow_max", where);
    p.invest_cost = candidate ? num(j, "invest_cost", where) : num_or(j, "invest_cost", 0.0);
    p.compressor_allowed = j.value("compressor_allowed", false);
    p.compressor_cost = num_or(j, "compressor_cost", 0.0);
    return p;
}

Line parse_line(const json& j, bool candidate, const std::string& where) {
    Line l;
    l.id = integer(j, "id", where);
    l.from = integer(j, "from", where);
    l.to = integer(j, "to", where);
    l.reactance = num(j, "reactance", where);
    if (l.reactance <= 0.0) fail(where, "non-positive reactance");
    l.flow_max = num(j, "flow_max", where);
    l.invest_cost = candidate ? num(j, "invest_cost", where) : num_or(j, "invest_cost", 0.0);
    return l;
}

std::map<int, double> parse_site_costs(const json& j, const char* key, const std::string& where) {
    std::map<int, double> out;
    const auto it = j.find(key);
    if (it == j.end()) return out;
    for (const auto& [k, v] : it->items()) {
        try {
            out[std::stoi(k)] = v.get<double>();
        } catch (const std::exception&) {
            fail(where + "." + key, "key '" + k + "' is not an integer id");
        }
    }
    return out;
}

}  // namespace

PlanningCase parse_case(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw CaseError(std::string("case file is not valid JSON: ") + e.what());
    }

    PlanningCase c;
    c.horizon = integer(j, "horizon", "case");
    if (c.horizon < 1) fail("case.horizon", "must be at least 1");
    c.segments = j.value("segments", 3);
    c.price_electricity = num_or(j, "price_electricity", c.price_electricity);
    c.price_gas = num_or(j, "price_gas", c.price_gas);
    c.gas_mwh_per_m3 = num_or(j, "gas_mwh_per_m3", c.gas_mwh_per_m3);

    const auto& jg = need(j, "gas", "case");
    for (std::size_t i = 0; i < need(jg, "nodes", "gas").size(); ++i) {
        const auto& jn = jg["nodes"][i];
        const std::string where = "gas.nodes[" + std::to_string(i) + "]";
        GasNode n;
        n.id = integer(jn, "id", where);
        n.pressure_min = num(jn, "pressure_min", where);
        n.pressure_max = num(jn, "pressure_max", where);
        n.load = series(jn, "load", c.horizon, where);
        c.gas.nodes.push_back(std::move(n));
    }
    for (std::size_t i = 0; i < need(jg, "sources", "gas").size(); ++i) {
        const auto& js = jg["sources"][i];
        const std::string where = "gas.sources[" + std::to_string(i) + "]";
        GasSource s;
        s.id = integer(js, "id", where);
        s.node = integer(js, "node", where);
        s.p_min = num(js, "p_min", where);
        s.p_max = num(js, "p_max", where);
        s.ramp_down = num(js, "ramp_down", where);
        s.ramp_up = num(js, "ramp_up", where);
        s.cost = num(js, "cost", where);
        c.gas.sources.push_back(s);
    }
    if (const auto it = jg.find("existing_pipes"); it != jg.end())
        for (std::size_t i = 0; i < it->size(); ++i)
            c.gas.existing_pipes.push_back(
                parse_pipe((*it)[i], false, "gas.existing_pipes[" + std::to_string(i) + "]"));
    if (const auto it = jg.find("candidate_pipes"); it != jg.end())
        for (std::size_t i = 0; i < it->size(); ++i)
            c.gas.candidate_pipes.push_back(
                parse_pipe((*it)[i], true, "gas.candidate_pipes[" + std::to_string(i) + "]"));

    const auto& je = need(j, "electric", "case");
    c.electric.slack_bus = integer(je, "slack_bus", "electric");
    for (std::size_t i = 0; i < need(je, "buses", "electric").size(); ++i) {
        const auto& jb = je["buses"][i];
        const std::string where = "electric.buses[" + std::to_string(i) + "]";
        Bus b;
        b.id = integer(jb, "id", where);
        b.load = series(jb, "load", c.horizon, where);
        c.electric.buses.push_back(std::move(b));
    }
    for (std::size_t i = 0; i < need(je, "generators", "electric").size(); ++i) {
        const auto& jn = je["generators"][i];
        const std::string where = "electric.generators[" + std::to_string(i) + "]";
        Generator g;
        g.id = integer(jn, "id", where);
        g.bus = integer(jn, "bus", where);
        g.p_min = num(jn, "p_min", where);
        g.p_max = num(jn, "p_max", where);
        g.ramp_down = num(jn, "ramp_down", where);
        g.ramp_up = num(jn, "ramp_up", where);
        g.min_up = integer(jn, "min_up", where);
        g.min_down = integer(jn, "min_down", where);
        g.cost = num(jn, "cost", where);
        c.electric.generators.push_back(g);
    }
    if (const auto it = je.find("existing_lines"); it != je.end())
        for (std::size_t i = 0; i < it->size(); ++i)
            c.electric.existing_lines.push_back(
                parse_line((*it)[i], false, "electric.existing_lines[" + std::to_string(i) + "]"));
    if (const auto it = je.find("candidate_lines"); it != je.end())
        for (std::size_t i = 0; i < it->size(); ++i)
            c.electric.candidate_lines.push_back(
                parse_line((*it)[i], true, "electric.candidate_lines[" + std::to_string(i) + "]"));

    for (std::size_t h = 0; h < need(j, "ries", "case").size(); ++h) {
        const auto& jr = j["ries"][h];
        const std::string rwhere = "ries[" + std::to_string(h) + "]";
        RiesSpec r;
        r.name = jr.value("name", "RIES" + std::to_string(h + 1));
        if (const auto it = jr.find("devices"); it != jr.end()) {
            for (std::size_t i = 0; i < it->size(); ++i) {
                const auto& jd = (*it)[i];
                const std::string where = rwhere + ".devices[" + std::to_string(i) + "]";
                Device d;
                d.kind = device_from(need(jd, "kind", where).get<std::string>(), where);
                for (const auto& [k, v] : need(jd, "outputs", where).items())
                    d.outputs[carrier_from(k, where + ".outputs")] = v.get<double>();
                d.input_max = num(jd, "input_max", where);
                d.cost = num(jd, "cost", where);
                r.devices.push_back(std::move(d));
            }
        }
        if (const auto it = jr.find("res"); it != jr.end()) {
            for (std::size_t i = 0; i < it->size(); ++i) {
                const auto& jd = (*it)[i];
                const std::string where = rwhere + ".res[" + std::to_string(i) + "]";
                ResOption o;
                o.kind = res_from(need(jd, "kind", where).get<std::string>(), where);
                o.profile = series(jd, "profile", c.horizon, where);
                o.cost = num(jd, "cost", where);
                o.max_modules = integer(jd, "max_modules", where);
                r.res.push_back(std::move(o));
            }
        }
        if (const auto it = jr.find("ess"); it != jr.end()) {
            for (std::size_t i = 0; i < it->size(); ++i) {
                const auto& jd = (*it)[i];
                const std::string where = rwhere + ".ess[" + std::to_string(i) + "]";
                EssOption o;
                o.kind = ess_from(need(jd, "kind", where).get<std::string>(), where);
                o.eta_ch = num(jd, "eta_ch", where);
                o.eta_dis = num(jd, "eta_dis", where);
                o.charge_max = num(jd, "charge_max", where);
                o.discharge_max = num(jd, "discharge_max", where);
                o.soc_min = num(jd, "soc_min", where);
                o.soc_max = num(jd, "soc_max", where);
                o.cost = num(jd, "cost", where);
                o.max_modules = integer(jd, "max_modules", where);
                r.ess.push_back(o);
            }
        }
        if (const auto it = jr.find("loads"); it != jr.end()) {
            for (const auto& [k, v] : it->items()) {
                const Carrier carrier = carrier_from(k, rwhere + ".loads");
                if (!v.is_array() || static_cast<int>(v.size()) != c.horizon)
                    fail(rwhere + ".loads." + k, "expected an array of length horizon");
                r.loads[carrier] = v.get<std::vector<double>>();
            }
        }
        r.site_cost_gas = parse_site_costs(jr, "site_cost_gas", rwhere);
        r.site_cost_elec = parse_site_costs(jr, "site_cost_elec", rwhere);
        c.ries.push_back(std::move(r));
    }

    if (const auto it = j.find("admm"); it != j.end()) {
        AdmmDefaults d;
        if (it->contains("rho_gn")) d.rho_gn = (*it)["rho_gn"].get<double>();
        if (it->contains("rho_en")) d.rho_en = (*it)["rho_en"].get<double>();
        if (it->contains("rho_ehg")) d.rho_ehg = (*it)["rho_ehg"].get<double>();
        if (it->contains("rho_ehe")) d.rho_ehe = (*it)["rho_ehe"].get<double>();
        if (it->contains("eps_gas")) d.eps_gas = (*it)["eps_gas"].get<double>();
        if (it->contains("eps_elec")) d.eps_elec = (*it)["eps_elec"].get<double>();
        if (it->contains("max_iters")) d.max_iters = (*it)["max_iters"].get<int>();
        if (it->contains("quad_knots")) d.quad_knots = (*it)["quad_knots"].get<int>();
        c.admm = d;
    }

    // Reference resolution.
    const CaseIndex index(c);
    for (const auto& s : c.gas.sources)
        if (!index.node_by_id.contains(s.node))
            fail("gas.sources id " + std::to_string(s.id),
                 "references absent node " + std::to_string(s.node));
    auto check_pipe = [&](const Pipe& p, const char* group) {
        if (!index.node_by_id.contains(p.from) || !index.node_by_id.contains(p.to))
            fail(std::string(group) + " id " + std::to_string(p.id),
                 "references absent node " + std::to_string(index.node_by_id.contains(p.from) ? p.to : p.from));
    };
    for (const auto& p : c.gas.existing_pipes) check_pipe(p, "gas.existing_pipes");
    for (const auto& p : c.gas.candidate_pipes) check_pipe(p, "gas.candidate_pipes");
    for (const auto& g : c.electric.generators)
        if (!index.bus_by_id.contains(g.bus))
            fail("electric.generators id " + std::to_string(g.id),
                 "references absent bus " + std::to_string(g.bus));
    auto check_line = [&](const Line& l, const char* group) {
        if (!index.bus_by_id.contains(l.from) || !index.bus_by_id.contains(l.to))
            fail(std::string(group) + " id " + std::to_string(l.id),
                 "references absent bus " + std::to_string(index.bus_by_id.contains(l.from) ? l.to : l.from));
    };
    for (const auto& l : c.electric.existing_lines) check_line(l, "electric.existing_lines");
    for (const auto& l : c.electric.candidate_lines) check_line(l, "electric.candidate_lines");
    if (!index.bus_by_id.contains(c.electric.slack_bus))
        fail("electric.slack_bus", "references absent bus " + std::to_string(c.electric.slack_bus));
    for (std::size_t h = 0; h < c.ries.size(); ++h) {
        for (const auto& [id, cost] : c.ries[h].site_cost_gas)
            if (!index.node_by_id.contains(id))
                fail("ries[" + std::to_string(h) + "].site_cost_gas",
                     "references absent node " + std::to_string(id));
        for (const auto& [id, cost] : c.ries[h].site_cost_elec)
            if (!index.bus_by_id.contains(id))
                fail("ries[" + std::to_string(h) + "].site_cost_elec",
                     "references absent bus " + std::to_string(id));
    }

    return c;
}

PlanningCase load_case(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw CaseError("cannot open case file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_case(buf.str());
}

namespace {

json pipe_to_json(const Pipe& p, bool candidate) {
    json j{{"id", p.id},
           {"from", p.from},
           {"to", p.to},
           {"weymouth", p.weymouth},
           {"flow_max", p.flow_max},
           {"compressor_allowed", p.compressor_allowed},
           {"compressor_cost", p.compressor_cost}};
    if (candidate) j["invest_cost"] = p.invest_cost;
    return j;
}

json line_to_json(const Line& l, bool candidate) {
    json j{{"id", l.id},
           {"from", l.from},
           {"to", l.to},
           {"reactance", l.reactance},
           {"flow_max", l.flow_max}};
    if (candidate) j["invest_cost"] = l.invest_cost;
    return j;
}

}  // namespace

std::string case_to_json(const PlanningCase& c) {
    json j;
    j["horizon"] = c.horizon;
    j["segments"] = c.segments;
    j["price_electricity"] = c.price_electricity;
    j["price_gas"] = c.price_gas;
    j["gas_mwh_per_m3"] = c.gas_mwh_per_m3;

    json jg;
    jg["nodes"] = json::array();
    for (const auto& n : c.gas.nodes)
        jg["nodes"].push_back({{"id", n.id},
                               {"pressure_min", n.pressure_min},
                               {"pressure_max", n.pressure_max},
                               {"load", n.load}});
    jg["sources"] = json::array();
    for (const auto& s : c.gas.sources)
        jg["sources"].push_back({{"id", s.id},
                                 {"node", s.node},
                                 {"p_min", s.p_min},
                                 {"p_max", s.p_max},
                                 {"ramp_down", s.ramp_down},
                                 {"ramp_up", s.ramp_up},
                                 {"cost", s.cost}});
    jg["existing_pipes"] = json::array();
    for (const auto& p : c.gas.existing_pipes) jg["existing_pipes"].push_back(pipe_to_json(p, false));
    jg["candidate_pipes"] = json::array();
    for (const auto& p : c.gas.candidate_pipes) jg["candidate_pipes"].push_back(pipe_to_json(p, true));
    j["gas"] = std::move(jg);

    json je;
    je["slack_bus"] = c.electric.slack_bus;
    je["buses"] = json::array();
    for (const auto& b : c.electric.buses) je["buses"].push_back({{"id", b.id}, {"load", b.load}});
    je["generators"] = json::array();
    for (const auto& g : c.electric.generators)
        je["generators"].push_back({{"id", g.id},
                                    {"bus", g.bus},
                                    {"p_min", g.p_min},
                                    {"p_max", g.p_max},
                                    {"ramp_down", g.ramp_down},
                                    {"ramp_up", g.ramp_up},
                                    {"min_up", g.min_up},
                                    {"min_down", g.min_down},
                                    {"cost", g.cost}});
    je["existing_lines"] = json::array();
    for (const auto& l : c.electric.existing_lines) je["existing_lines"].push_back(line_to_json(l, false));
    je["candidate_lines"] = json::array();
    for (const auto& l : c.electric.candidate_lines) je["candidate_lines"].push_back(line_to_json(l, true));
    j["electric"] = std::move(je);

    j["ries"] = json::array();
    for (const auto& r : c.ries) {
        json jr;
        jr["name"] = r.name;
        jr["devices"] = json::array();
        for (const auto& d : r.devices) {
            json outputs;
            for (const auto& [carrier, eff] : d.outputs) outputs[to_string(carrier)] = eff;
            jr["devices"].push_back({{"kind", to_string(d.kind)},
                                     {"outputs", std::move(outputs)},
                                     {"input_max", d.input_max},
                                     {"cost", d.cost}});
        }
        jr["res"] = json::array();
        for (const auto& o : r.res)
            jr["res"].push_back({{"kind", to_string(o.kind)},
                                 {"profile", o.profile},
                                 {"cost", o.cost},
                                 {"max_modules", o.max_modules}});
        jr["ess"] = json::array();
        for (const auto& o : r.ess)
            jr["ess"].push_back({{"kind", to_string(o.kind)},
                                 {"eta_ch", o.eta_ch},
                                 {"eta_dis", o.eta_dis},
                                 {"charge_max", o.charge_max},
                                 {"discharge_max", o.discharge_max},
                                 {"soc_min", o.soc_min},
                                 {"soc_max", o.soc_max},
                                 {"cost", o.cost},
                                 {"max_modules", o.max_modules}});
        json loads;
        for (const auto& [carrier, l] : r.loads) loads[to_string(carrier)] = l;
        jr["loads"] = std::move(loads);
        json sg;
        for (const auto& [id, cost] : r.site_cost_gas) sg[std::to_string(id)] = cost;
        jr["site_cost_gas"] = std::move(sg);
        json se;
        for (const auto& [id, cost] : r.site_cost_elec) se[std::to_string(id)] = cost;
        jr["site_cost_elec"] = std::move(se);
        j["ries"].push_back(std::move(jr));
    }

    if (c.admm) {
        json ja;
        if (c.admm->rho_gn) ja["rho_gn"] = *c.admm->rho_gn;
        if (c.admm->rho_en) ja["rho_en"] = *c.admm->rho_en;
        if (c.admm->rho_ehg) ja["rho_ehg"] = *c.admm->rho_ehg;
        if (c.admm->rho_ehe) ja["rho_ehe"] = *c.admm->rho_ehe;
        if (c.admm->eps_gas) ja["eps_gas"] = *c.admm->eps_gas;
        if (c.admm->eps_elec) ja["eps_elec"] = *c.admm->eps_elec;
        if (c.admm->max_iters) ja["max_iters"] = *c.admm->max_iters;
        if (c.admm->quad_knots) ja["quad_knots"] = *c.admm->quad_knots;
        j["admm"] = std::move(ja);
    }

    return j.dump(2) + "\n";
}

void save_case(const PlanningCase& c, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw CaseError("cannot write case file: " + path.string());
    out << case_to_json(c);
}

}  // namespace triplan::caseio
