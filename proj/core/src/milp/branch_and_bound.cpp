#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

#include "triplan/milp/solve.hpp"

// Best-bound branch and bound over the LP relaxation. Node selection breaks
// bound ties toward the newest node, which dives on plateaus of equal bounds
// (cost-free binaries such as segment selectors would otherwise fan out
// breadth-first). Branching picks the most fractional integer variable,
// lowest VarId on ties; children split on floor/ceil of the LP value.

namespace triplan::milp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Node {
    int parent = -1;
    int var = -1;       // branched variable, -1 for the root
    double lo = -kInf;  // bound tightenings introduced by this node
    double hi = kInf;
    double bound = -kInf;  // parent LP objective: a valid lower bound
    std::int64_t id = 0;
};

}  // namespace

Solution solve_mip(const Model& model, const SolverConfig& config) {
    std::vector<int> int_vars;
    for (std::size_t j = 0; j < model.num_variables(); ++j)
        if (model.variables()[j].is_integral()) int_vars.push_back(static_cast<int>(j));

    if (int_vars.empty()) {
        Solution s = solve_lp(model);
        if (config.record_bound_history && s.optimal()) s.bound_history.push_back(s.objective);
        return s;
    }

    const int n = static_cast<int>(model.num_variables());
    std::vector<double> base_lo(static_cast<std::size_t>(n)), base_hi(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        base_lo[static_cast<std::size_t>(j)] = model.variables()[static_cast<std::size_t>(j)].lower;
        base_hi[static_cast<std::size_t>(j)] = model.variables()[static_cast<std::size_t>(j)].upper;
    }

    std::vector<Node> pool;
    pool.push_back(Node{});

    auto worse = [&pool](int a, int b) {
        if (pool[static_cast<std::size_t>(a)].bound != pool[static_cast<std::size_t>(b)].bound)
            return pool[static_cast<std::size_t>(a)].bound > pool[static_cast<std::size_t>(b)].bound;
        return pool[static_cast<std::size_t>(a)].id < pool[static_cast<std::size_t>(b)].id;
    };
    std::priority_queue<int, std::vector<int>, decltype(worse)> open(worse);
    open.push(0);

    bool have_incumbent = false;
    std::vector<double> inc_values;
    double inc_obj = kInf;
    std::vector<double> history;
    std::int64_t processed = 0;
    std::int64_t next_id = 1;
    std::vector<double> lo, hi;

    bool hit_node_limit = false;
    while (!open.empty()) {
        const int ni = open.top();
        open.pop();
        const double node_bound = pool[static_cast<std::size_t>(ni)].bound;
        if (have_incumbent && node_bound >= inc_obj - config.mip_gap) break;
        if (processed >= config.max_nodes) {
            hit_node_limit = true;
            break;
        }
        ++processed;

        lo = base_lo;
        hi = base_hi;
        bool empty_box = false;
        for (int p = ni; p > 0; p = pool[static_cast<std::size_t>(p)].parent) {
            const auto& nd = pool[static_cast<std::size_t>(p)];
            auto& l = lo[static_cast<std::size_t>(nd.var)];
            auto& u = hi[static_cast<std::size_t>(nd.var)];
            l = std::max(l, nd.lo);
            u = std::min(u, nd.hi);
            if (l > u) empty_box = true;
        }
        if (empty_box) continue;

        const Solution rel = solve_lp(model, lo, hi);
        if (config.record_bound_history) {
            if (node_bound > -kInf)
                history.push_back(node_bound);
            else if (rel.optimal())
                history.push_back(rel.objective);
        }
        if (!rel.optimal()) continue;
        if (have_incumbent && rel.objective >= inc_obj - config.mip_gap) continue;

        int branch_var = -1;
        double branch_val = 0.0;
        double branch_score = -1.0;
        for (const int v : int_vars) {
            const double x = rel.values[static_cast<std::size_t>(v)];
            if (std::fabs(x - std::round(x)) <= config.integrality_tol) continue;
            const double frac = x - std::floor(x);
            const double score = std::min(frac, 1.0 - frac);
            if (score > branch_score) {
                branch_score = score;
                branch_var = v;
                branch_val = x;
            }
        }

        if (branch_var < 0) {
            std::vector<double> vals = rel.values;
            for (const int v : int_vars)
                vals[static_cast<std::size_t>(v)] = std::round(vals[static_cast<std::size_t>(v)]);
            const double obj = model.eval_objective(vals);
            if (!have_incumbent || obj < inc_obj) {
                have_incumbent = true;
                inc_obj = obj;
                inc_values = std::move(vals);
            }
            continue;
        }

        Node down;
        down.parent = ni;
        down.var = branch_var;
        down.hi = std::floor(branch_val);
        down.bound = rel.objective;
        down.id = next_id++;
        pool.push_back(down);
        open.push(static_cast<int>(pool.size()) - 1);

        Node up;
        up.parent = ni;
        up.var = branch_var;
        up.lo = std::ceil(branch_val);
        up.bound = rel.objective;
        up.id = next_id++;
        pool.push_back(up);
        open.push(static_cast<int>(pool.size()) - 1);
    }

    Solution out;
    out.bound_history = std::move(history);
    if (hit_node_limit) {
        out.status = SolveStatus::node_limit;
        if (have_incumbent) {
            out.objective = inc_obj;
            out.values = std::move(inc_values);
        }
        return out;
    }
    if (have_incumbent) {
        out.status = SolveStatus::optimal;
        out.objective = inc_obj;
        out.values = std::move(inc_values);
    } else {
        out.status = SolveStatus::infeasible;
    }
    return out;
}

}  // namespace triplan::milp
