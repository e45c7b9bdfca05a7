#pragma once

#include <vector>

#include "triplan/consensus.hpp"
#include "triplan/coord/plan.hpp"

namespace triplan::coord {

struct IterationRecord {
    int k = 0;
    double res_gas = 0.0;   // max(|TP - IP|, |RP - IP|) over gas channels
    double res_elec = 0.0;  // same over electric channels
    double obj_gn = 0.0;    // agent plan costs, consensus terms excluded
    double obj_en = 0.0;
    double obj_ries = 0.0;
};

/// Per-iteration powers, kept so residual columns can be recomputed exactly.
struct IterationSnapshot {
    ChannelArray tp_gas, rp_gas, ip_gas;  // ip is the k-iterate the test used
    ChannelArray tp_elec, rp_elec, ip_elec;
};

struct Trace {
    std::vector<IterationRecord> records;
    std::vector<IterationSnapshot> snapshots;
    bool converged = false;
    bool stalled = false;
    int iterations = 0;
};

/// Multipliers start at one, intermediate powers at zero.
ConsensusState initial_consensus(const caseio::PlanningCase& c);

/// Midpoint intermediate update followed by the four multiplier updates
/// (transmitted-side residuals for the network families, received-side for
/// the district families). Pure; throws ShapeError on mismatched arrays.
ConsensusState update_consensus(const ConsensusState& s, const ChannelArray& tp_gas,
                                const ChannelArray& tp_elec, const ChannelArray& rp_gas,
                                const ChannelArray& rp_elec, const AdmmConfig& config);

/// True iff both carriers' residuals against the previous intermediate powers
/// are within their thresholds (inclusive).
bool check_convergence(const ChannelArray& tp_gas, const ChannelArray& rp_gas,
                       const ChannelArray& ip_gas, const ChannelArray& tp_elec,
                       const ChannelArray& rp_elec, const ChannelArray& ip_elec, double eps_gas,
                       double eps_elec);

struct AdmmResult {
    CombinedPlan plan;
    Trace trace;
};

/// Three-agent consensus loop: the gas, electric, and district subproblems
/// all consume the iteration-k multipliers and intermediate powers (an
/// independent batch, solved concurrently when configured), then the
/// convergence test runs against the k-iterate intermediate powers, then the
/// consensus update closes the iteration. Non-convergence within max_iters
/// and residual stalls are reported, not thrown.
AdmmResult admm_run(const caseio::PlanningCase& c, const AdmmConfig& config = {});

/// Built-in defaults overridden by the case's optional admm block.
AdmmConfig admm_config_for(const caseio::PlanningCase& c);

}  // namespace triplan::coord
