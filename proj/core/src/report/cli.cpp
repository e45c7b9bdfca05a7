#include "triplan/report/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "triplan/caseio/io.hpp"
#include "triplan/caseio/validate.hpp"
#include "triplan/coord/admm.hpp"
#include "triplan/coord/joint.hpp"
#include "triplan/error.hpp"
#include "triplan/oracle/oracle.hpp"
#include "triplan/report/artifacts.hpp"

namespace triplan::report {

namespace {

namespace fs = std::filesystem;

constexpr int kOk = 0;
constexpr int kFailed = 1;   // infeasible, non-converged, failed validation/checks
constexpr int kUsage = 2;    // bad invocation or IO

caseio::PlanningCase load_or_throw(const std::string& path) {
    caseio::PlanningCase c = caseio::load_case(path);
    const caseio::ValidationReport rep = caseio::validate_case(c);
    if (rep.has_errors()) {
        std::ostringstream msg;
        rep.print(msg);
        throw CaseError("case fails validation:\n" + msg.str());
    }
    return c;
}

int cmd_validate(const std::string& path) {
    const caseio::PlanningCase c = caseio::load_case(path);
    const caseio::ValidationReport rep = caseio::validate_case(c);
    if (rep.clean()) {
        std::cout << "ok: " << path << " is a valid case\n";
        return kOk;
    }
    rep.print(std::cout);
    return rep.has_errors() ? kFailed : kOk;
}

int cmd_joint(const std::string& case_path, const std::string& out_dir) {
    const caseio::PlanningCase c = load_or_throw(case_path);
    const coord::JointResult result = coord::solve_joint(c);
    if (!result.solution.optimal()) {
        std::cout << "joint model is "
                  << (result.solution.status == milp::SolveStatus::infeasible ? "infeasible"
                                                                              : "unsolved")
                  << "\n";
        return kFailed;
    }
    std::cout << cost_table(c, result.plan);
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        write_solution(c, result.plan, fs::path(out_dir) / "solution.json");
        std::cout << "wrote " << (fs::path(out_dir) / "solution.json").string() << "\n";
    } else {
        std::cout << solution_json(c, result.plan);
    }
    return kOk;
}

struct AdmmFlags {
    double rho_gn = -1, rho_en = -1, rho_ehg = -1, rho_ehe = -1;
    double eps_g = -1, eps_e = -1;
    int max_iters = -1;
    int quad_knots = -1;
};

AdmmConfig merge_config(const caseio::PlanningCase& c, const AdmmFlags& f) {
    AdmmConfig cfg = coord::admm_config_for(c);  // built-ins overridden by the case file
    if (f.rho_gn > 0) cfg.rho_gn = f.rho_gn;     // flags override both
    if (f.rho_en > 0) cfg.rho_en = f.rho_en;
    if (f.rho_ehg > 0) cfg.rho_ehg = f.rho_ehg;
    if (f.rho_ehe > 0) cfg.rho_ehe = f.rho_ehe;
    if (f.eps_g > 0) cfg.eps_gas = f.eps_g;
    if (f.eps_e > 0) cfg.eps_elec = f.eps_e;
    if (f.max_iters > 0) cfg.max_iters = f.max_iters;
    if (f.quad_knots > 0) cfg.quad_knots = f.quad_knots;
    return cfg;
}

int cmd_admm(const std::string& case_path, const AdmmFlags& flags, const std::string& out_dir) {
    const caseio::PlanningCase c = load_or_throw(case_path);
    const AdmmConfig cfg = merge_config(c, flags);
    const coord::AdmmResult result = coord::admm_run(c, cfg);

    std::cout << cost_table(c, result.plan);
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        write_solution(c, result.plan, fs::path(out_dir) / "solution.json");
        write_trace_csv(result.trace, fs::path(out_dir) / "trace.csv");
        render_convergence_svg(result.trace, cfg.eps_gas, cfg.eps_elec,
                               fs::path(out_dir) / "convergence.svg");
        std::cout << "wrote solution.json, trace.csv, convergence.svg under " << out_dir << "\n";
    } else {
        std::cout << solution_json(c, result.plan);
    }
    return result.trace.converged ? kOk : kFailed;
}

int cmd_sweep(const std::string& case_path, const std::string& grid_text,
              const std::string& out_dir) {
    const caseio::PlanningCase c = load_or_throw(case_path);
    std::vector<double> grid;
    std::stringstream ss(grid_text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        grid.push_back(std::stod(item));
    }
    if (grid.empty()) throw Error("sweep: empty --rho-grid");

    const AdmmConfig base = coord::admm_config_for(c);
    const std::vector<SweepRow> rows = run_sweep(c, grid, base);
    std::cout << sweep_csv(rows);
    if (!out_dir.empty()) {
        write_sweep(rows, out_dir);
        std::cout << "wrote sweep.csv, sweep.json under " << out_dir << "\n";
    }
    const bool any_converged =
        std::any_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.converged; });
    return any_converged ? kOk : kFailed;
}

int cmd_oracle(const std::string& case_path) {
    const caseio::PlanningCase c = load_or_throw(case_path);
    constexpr double kTol = 1e-6;
    bool all_pass = true;

    const auto report = [&](const char* label, const milp::Model& model) {
        const milp::Solution mip = milp::solve_mip(model);
        const oracle::OracleResult brute = oracle::enumerate_mip(model);
        const oracle::CompareVerdict v = oracle::compare_solutions(model, mip, brute, kTol);
        std::cout << label << ": " << (v.pass ? "pass" : "FAIL") << "  (delta "
                  << v.objective_delta << ", tried " << brute.assignments_tried << " assignments)\n";
        all_pass = all_pass && v.pass;
    };

    report("gas agent      ", agents::build_gas_model(c).model);
    report("electric agent ", agents::build_electric_model(c).model);
    report("district agent ", agents::build_ries_model(c).model);
    report("joint model    ", coord::build_joint_model(c).model);
    return all_pass ? kOk : kFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"tripartite gas / electricity / district energy planning toolkit"};
    app.require_subcommand(1);

    // case validate <file>
    auto* case_cmd = app.add_subcommand("case", "case-file utilities");
    case_cmd->require_subcommand(1);
    std::string validate_path;
    auto* validate_cmd = case_cmd->add_subcommand("validate", "check a case file");
    validate_cmd->add_option("file", validate_path, "case file")->required();

    auto* plan_cmd = app.add_subcommand("plan", "solve planning problems");
    plan_cmd->require_subcommand(1);

    std::string joint_case, joint_out;
    auto* joint_cmd = plan_cmd->add_subcommand("joint", "centralized joint plan");
    joint_cmd->add_option("--case", joint_case, "case file")->required();
    joint_cmd->add_option("--out", joint_out, "output directory");

    std::string admm_case, admm_out;
    AdmmFlags flags;
    auto* admm_cmd = plan_cmd->add_subcommand("admm", "three-agent distributed plan");
    admm_cmd->add_option("--case", admm_case, "case file")->required();
    admm_cmd->add_option("--out", admm_out, "output directory");
    admm_cmd->add_option("--rho-gn", flags.rho_gn, "gas-network penalty parameter");
    admm_cmd->add_option("--rho-en", flags.rho_en, "electric-network penalty parameter");
    admm_cmd->add_option("--rho-ehg", flags.rho_ehg, "district gas penalty parameter");
    admm_cmd->add_option("--rho-ehe", flags.rho_ehe, "district electric penalty parameter");
    admm_cmd->add_option("--eps-g", flags.eps_g, "gas convergence threshold");
    admm_cmd->add_option("--eps-e", flags.eps_e, "electric convergence threshold");
    admm_cmd->add_option("--max-iters", flags.max_iters, "iteration cap");
    admm_cmd->add_option("--quad-knots", flags.quad_knots, "penalty linearization knots per side");

    std::string sweep_case, sweep_out, sweep_grid = "0.1,1,10,100,200";
    auto* sweep_cmd = plan_cmd->add_subcommand("sweep", "penalty-parameter sweep");
    sweep_cmd->add_option("--case", sweep_case, "case file")->required();
    sweep_cmd->add_option("--rho-grid", sweep_grid, "comma-separated uniform penalty values");
    sweep_cmd->add_option("--out", sweep_out, "output directory");

    std::string oracle_case;
    auto* oracle_cmd = plan_cmd->add_subcommand("oracle", "brute-force check (tiny cases only)");
    oracle_cmd->add_option("--case", oracle_case, "case file")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (validate_cmd->parsed()) return cmd_validate(validate_path);
        if (joint_cmd->parsed()) return cmd_joint(joint_case, joint_out);
        if (admm_cmd->parsed()) return cmd_admm(admm_case, flags, admm_out);
        if (sweep_cmd->parsed()) return cmd_sweep(sweep_case, sweep_grid, sweep_out);
        if (oracle_cmd->parsed()) return cmd_oracle(oracle_case);
    } catch (const CaseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

}  // namespace triplan::report
