#include "triplan/report/artifacts.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "triplan/error.hpp"

namespace triplan::report {

using nlohmann::json;

CostBreakdown breakdown(const caseio::PlanningCase& c, const coord::CombinedPlan& plan) {
    CostBreakdown b;
    for (const int id : plan.gas.built_pipelines)
        for (const auto& p : c.gas.candidate_pipes)
            if (p.id == id) b.gn_pipeline += p.invest_cost;
    for (const int id : plan.gas.built_compressors) {
        for (const auto& p : c.gas.existing_pipes)
            if (p.id == id) b.gn_compressor += p.compressor_cost;
        for (const auto& p : c.gas.candidate_pipes)
            if (p.id == id) b.gn_compressor += p.compressor_cost;
    }
    for (const int id : plan.elec.built_lines)
        for (const auto& l : c.electric.candidate_lines)
            if (l.id == id) b.en_line += l.invest_cost;
    b.ries_component = plan.ries.invest_cost;
    b.ries_siting = plan.ries.siting_cost;
    b.gn_operation = plan.gas.operating_cost;
    b.en_operation = plan.elec.operating_cost;
    b.ries_electricity = plan.ries.electricity_cost;
    b.ries_gas = plan.ries.gas_cost;
    return b;
}

namespace {

json plan_to_json(const caseio::PlanningCase& c, const coord::CombinedPlan& plan) {
    const CostBreakdown b = breakdown(c, plan);
    json j;
    j["mode"] = coord::to_string(plan.mode);
    j["total_cost"] = b.total();
    if (plan.mode == coord::PlanMode::distributed) {
        j["converged"] = plan.converged;
        j["stalled"] = plan.stalled;
        j["iterations"] = plan.iterations;
        j["final_residual_gas"] = plan.final_residual_gas;
        j["final_residual_elec"] = plan.final_residual_elec;
        j["pwl_penalty_tolerance"] = plan.pwl_penalty_tolerance;
    }

    j["cost_breakdown"] = {{"gn_pipeline", b.gn_pipeline},
                           {"gn_compressor", b.gn_compressor},
                           {"en_line", b.en_line},
                           {"ries_component", b.ries_component},
                           {"ries_siting", b.ries_siting},
                           {"gn_operation", b.gn_operation},
                           {"en_operation", b.en_operation},
                           {"ries_electricity", b.ries_electricity},
                           {"ries_gas", b.ries_gas}};

    json jg;
    jg["built_pipelines"] = plan.gas.built_pipelines;
    jg["built_compressors"] = plan.gas.built_compressors;
    jg["source_dispatch"] = plan.gas.source_dispatch;
    jg["invest_cost"] = plan.gas.invest_cost;
    jg["operating_cost"] = plan.gas.operating_cost;
    j["gas"] = std::move(jg);

    json je;
    je["built_lines"] = plan.elec.built_lines;
    je["commitment"] = plan.elec.commitment;
    je["dispatch"] = plan.elec.dispatch;
    je["invest_cost"] = plan.elec.invest_cost;
    je["operating_cost"] = plan.elec.operating_cost;
    j["electric"] = std::move(je);

    j["ries"] = json::array();
    for (const auto& u : plan.ries.units) {
        json ju;
        ju["name"] = u.name;
        json devices;
        for (const auto& [kind, cap] : u.device_capacity) devices[caseio::to_string(kind)] = cap;
        ju["devices"] = std::move(devices);
        json res;
        for (const auto& [kind, modules] : u.res_modules) res[caseio::to_string(kind)] = modules;
        ju["res_modules"] = std::move(res);
        json ess;
        for (const auto& [kind, modules] : u.ess_modules) ess[caseio::to_string(kind)] = modules;
        ju["ess_modules"] = std::move(ess);
        ju["gas_nodes"] = u.gas_nodes;
        ju["buses"] = u.buses;
        ju["invest_cost"] = u.invest_cost;
        ju["siting_cost"] = u.siting_cost;
        ju["electricity_cost"] = u.electricity_cost;
        ju["gas_cost"] = u.gas_cost;
        j["ries"].push_back(std::move(ju));
    }
    return j;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace

std::string solution_json(const caseio::PlanningCase& c, const coord::CombinedPlan& plan) {
    return plan_to_json(c, plan).dump(2) + "\n";
}

void write_solution(const caseio::PlanningCase& c, const coord::CombinedPlan& plan,
                    const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << solution_json(c, plan);
}

std::string cost_table(const caseio::PlanningCase& c, const coord::CombinedPlan& plan) {
    const CostBreakdown b = breakdown(c, plan);
    std::ostringstream out;
    out << "cost breakdown (" << coord::to_string(plan.mode) << ", M$)\n";
    const auto row = [&](const char* label, double v) {
        out << "  " << label;
        for (std::size_t i = std::string(label).size(); i < 26; ++i) out << ' ';
        out << format_double(v) << "\n";
    };
    row("GN pipeline invest", b.gn_pipeline);
    row("GN compressor invest", b.gn_compressor);
    row("EN line invest", b.en_line);
    row("RIES component invest", b.ries_component);
    row("RIES siting", b.ries_siting);
    row("GN operation", b.gn_operation);
    row("EN operation", b.en_operation);
    row("RIES purchased elec", b.ries_electricity);
    row("RIES purchased gas", b.ries_gas);
    row("total", b.total());
    if (plan.mode == coord::PlanMode::distributed) {
        out << "  converged                 " << (plan.converged ? "yes" : "no") << "\n";
        out << "  iterations                " << plan.iterations << "\n";
        out << "  residual gas / elec       " << format_double(plan.final_residual_gas) << " / "
            << format_double(plan.final_residual_elec) << "\n";
    }
    return out.str();
}

std::string trace_csv(const coord::Trace& trace) {
    std::string out = "iter,res_gas,res_elec,obj_gn,obj_en,obj_ries\n";
    for (const auto& r : trace.records) {
        char buf[200];
        std::snprintf(buf, sizeof buf, "%d,%.10g,%.10g,%.10g,%.10g,%.10g\n", r.k, r.res_gas,
                      r.res_elec, r.obj_gn, r.obj_en, r.obj_ries);
        out += buf;
    }
    return out;
}

void write_trace_csv(const coord::Trace& trace, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << trace_csv(trace);
}

std::string convergence_svg(const coord::Trace& trace, double eps_gas, double eps_elec) {
    if (trace.records.empty()) throw Error("convergence_svg: empty trace");

    constexpr double kW = 640.0, kH = 400.0;
    constexpr double kLeft = 60.0, kRight = 20.0, kTop = 20.0, kBottom = 40.0;
    const double plot_w = kW - kLeft - kRight;
    const double plot_h = kH - kTop - kBottom;

    double lo = std::min(eps_gas, eps_elec), hi = std::max(eps_gas, eps_elec);
    for (const auto& r : trace.records) {
        for (const double v : {r.res_gas, r.res_elec}) {
            const double clamped = std::max(v, 1e-12);
            lo = std::min(lo, clamped);
            hi = std::max(hi, clamped);
        }
    }
    const int dec_lo = static_cast<int>(std::floor(std::log10(lo)));
    const int dec_hi = static_cast<int>(std::ceil(std::log10(hi)));
    const double span = std::max(1, dec_hi - dec_lo);

    const int n = static_cast<int>(trace.records.size());
    const auto x_of = [&](int k) {
        return kLeft + (n == 1 ? 0.5 * plot_w : plot_w * k / (n - 1));
    };
    const auto y_of = [&](double v) {
        const double d = std::log10(std::max(v, 1e-12));
        return kTop + plot_h * (dec_hi - d) / span;
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
        << "\" viewBox=\"0 0 " << kW << " " << kH << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // Decade gridlines and tick labels.
    for (int d = dec_lo; d <= dec_hi; ++d) {
        const double y = y_of(std::pow(10.0, d));
        svg << "<line x1=\"" << kLeft << "\" y1=\"" << y << "\" x2=\"" << kW - kRight << "\" y2=\""
            << y << "\" stroke=\"#dddddd\"/>\n";
        svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << y + 4
            << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">1e" << d
            << "</text>\n";
    }
    svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
        << kH - kBottom << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << kLeft << "\" y1=\"" << kH - kBottom << "\" x2=\"" << kW - kRight
        << "\" y2=\"" << kH - kBottom << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kH - 10
        << "\" text-anchor=\"middle\" font-size=\"12\" font-family=\"sans-serif\">iteration</text>\n";

    // Threshold rules.
    const auto rule = [&](double eps, const char* color, const char* label) {
        const double y = y_of(eps);
        svg << "<line x1=\"" << kLeft << "\" y1=\"" << y << "\" x2=\"" << kW - kRight << "\" y2=\""
            << y << "\" stroke=\"" << color << "\" stroke-dasharray=\"6 4\"/>\n";
        svg << "<text x=\"" << kW - kRight - 4 << "\" y=\"" << y - 4
            << "\" text-anchor=\"end\" font-size=\"10\" font-family=\"sans-serif\" fill=\"" << color
            << "\">" << label << "</text>\n";
    };
    rule(eps_gas, "#1f77b4", "eps gas");
    rule(eps_elec, "#ff7f0e", "eps elec");

    const auto polyline = [&](const char* color, bool gas) {
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.6\" points=\"";
        for (int k = 0; k < n; ++k) {
            const auto& r = trace.records[static_cast<std::size_t>(k)];
            svg << x_of(k) << "," << y_of(gas ? r.res_gas : r.res_elec) << " ";
        }
        svg << "\"/>\n";
    };
    polyline("#1f77b4", true);
    polyline("#ff7f0e", false);

    svg << "<text x=\"" << kLeft + 8 << "\" y=\"" << kTop + 14
        << "\" font-size=\"11\" font-family=\"sans-serif\" fill=\"#1f77b4\">gas residual</text>\n";
    svg << "<text x=\"" << kLeft + 8 << "\" y=\"" << kTop + 28
        << "\" font-size=\"11\" font-family=\"sans-serif\" fill=\"#ff7f0e\">electric residual</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

void render_convergence_svg(const coord::Trace& trace, double eps_gas, double eps_elec,
                            const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << convergence_svg(trace, eps_gas, eps_elec);
}

std::vector<SweepRow> run_sweep(const caseio::PlanningCase& c, const std::vector<double>& grid,
                                const AdmmConfig& base) {
    std::vector<std::array<double, 4>> settings;
    for (const double rho : grid) settings.push_back({rho, rho, rho, rho});
    // The four mixed rows of the penalty-parameter study.
    settings.push_back({10.0, 10.0, 100.0, 100.0});
    settings.push_back({100.0, 10.0, 100.0, 100.0});
    settings.push_back({10.0, 100.0, 100.0, 100.0});
    settings.push_back({100.0, 100.0, 10.0, 10.0});

    std::vector<SweepRow> rows;
    for (const auto& s : settings) {
        AdmmConfig cfg = base;
        cfg.rho_gn = s[0];
        cfg.rho_en = s[1];
        cfg.rho_ehg = s[2];
        cfg.rho_ehe = s[3];
        SweepRow row;
        row.rho_gn = s[0];
        row.rho_en = s[1];
        row.rho_ehg = s[2];
        row.rho_ehe = s[3];
        const auto start = std::chrono::steady_clock::now();
        const coord::AdmmResult result = coord::admm_run(c, cfg);
        row.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        row.converged = result.trace.converged;
        row.stalled = result.trace.stalled;
        row.iterations = result.trace.iterations;
        row.total_cost = result.plan.total_cost;
        rows.push_back(row);
    }
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = "rho_gn,rho_en,rho_ehg,rho_ehe,converged,iterations,total_cost,wall_seconds\n";
    for (const auto& r : rows) {
        char buf[240];
        std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.10g,%.10g,%s,%d,%.10g,%.3f\n", r.rho_gn,
                      r.rho_en, r.rho_ehg, r.rho_ehe, r.converged ? "yes" : "no", r.iterations,
                      r.total_cost, r.wall_seconds);
        out += buf;
    }
    return out;
}

void write_sweep(const std::vector<SweepRow>& rows, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    {
        std::ofstream out(dir / "sweep.csv");
        if (!out) throw Error("cannot write sweep.csv");
        out << sweep_csv(rows);
    }
    json j = json::array();
    for (const auto& r : rows)
        j.push_back({{"rho_gn", r.rho_gn},
                     {"rho_en", r.rho_en},
                     {"rho_ehg", r.rho_ehg},
                     {"rho_ehe", r.rho_ehe},
                     {"converged", r.converged},
                     {"stalled", r.stalled},
                     {"iterations", r.iterations},
                     {"total_cost", r.total_cost},
                     {"wall_seconds", r.wall_seconds}});
    std::ofstream out(dir / "sweep.json");
    if (!out) throw Error("cannot write sweep.json");
    out << j.dump(2) << "\n";
}

}  // namespace triplan::report
