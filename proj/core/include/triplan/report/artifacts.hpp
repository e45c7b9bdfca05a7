#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "triplan/caseio/case.hpp"
#include "triplan/consensus.hpp"
#include "triplan/coord/admm.hpp"
#include "triplan/coord/plan.hpp"

namespace triplan::report {

/// Table-3-style cost rows; the total is the exact sum of the rows.
struct CostBreakdown {
    double gn_pipeline = 0.0;
    double gn_compressor = 0.0;
    double en_line = 0.0;
    double ries_component = 0.0;
    double ries_siting = 0.0;
    double gn_operation = 0.0;
    double en_operation = 0.0;
    double ries_electricity = 0.0;
    double ries_gas = 0.0;

    [[nodiscard]] double total() const noexcept {
        return gn_pipeline + gn_compressor + en_line + ries_component + ries_siting +
               gn_operation + en_operation + ries_electricity + ries_gas;
    }
};
CostBreakdown breakdown(const caseio::PlanningCase& c, const coord::CombinedPlan& plan);

/// Machine-readable solution document (deterministic; no timestamps).
std::string solution_json(const caseio::PlanningCase& c, const coord::CombinedPlan& plan);
void write_solution(const caseio::PlanningCase& c, const coord::CombinedPlan& plan,
                    const std::filesystem::path& path);

/// Human-readable cost table mirroring the solution document.
std::string cost_table(const caseio::PlanningCase& c, const coord::CombinedPlan& plan);

/// Header `iter,res_gas,res_elec,obj_gn,obj_en,obj_ries`, one row per
/// iteration, byte-stable for a fixed trace.
std::string trace_csv(const coord::Trace& trace);
void write_trace_csv(const coord::Trace& trace, const std::filesystem::path& path);

/// Log-scale residual plot: one polyline per carrier, decade ticks, dashed
/// rules at the convergence thresholds. Requires a non-empty trace.
std::string convergence_svg(const coord::Trace& trace, double eps_gas, double eps_elec);
void render_convergence_svg(const coord::Trace& trace, double eps_gas, double eps_elec,
                            const std::filesystem::path& path);

struct SweepRow {
    double rho_gn = 0.0, rho_en = 0.0, rho_ehg = 0.0, rho_ehe = 0.0;
    bool converged = false;
    bool stalled = false;
    int iterations = 0;
    double total_cost = 0.0;
    double wall_seconds = 0.0;  // recorded, never asserted
};

/// Runs the consensus loop once per setting: every uniform value of `grid`
/// plus the four mixed 10/100 rows studied in the penalty-parameter sweep.
std::vector<SweepRow> run_sweep(const caseio::PlanningCase& c, const std::vector<double>& grid,
                                const AdmmConfig& base);
std::string sweep_csv(const std::vector<SweepRow>& rows);
void write_sweep(const std::vector<SweepRow>& rows, const std::filesystem::path& dir);

}  // namespace triplan::report
