#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "triplan/error.hpp"
#include "triplan/milp/solve.hpp"

// Bounded-variable primal simplex on a dense tableau. Rows are kept as
// equalities A x + s = b with a ranged slack per row, so variable bounds never
// become extra rows. Phase 1 drives artificial columns (one per row whose
// all-slack start violates the slack range) to zero; phase 2 minimizes the
// model objective. Pricing is Dantzig's rule; after a degenerate stretch the
// loop switches to Bland's rule, which cannot cycle.

namespace triplan::milp {

namespace {

constexpr double kEnterTol = 1e-9;
constexpr double kPivotTol = 1e-10;
constexpr double kCoefTol = 1e-11;
constexpr double kRatioTie = 1e-12;
constexpr double kPhase1Tol = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Tableau {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;               // rows x cols, row-major
    std::vector<double> vals;            // value of the basic variable per row
    std::vector<int> basis;              // column in the basis per row
    std::vector<double> lo, up;          // per column
    std::vector<std::uint8_t> at_up;     // nonbasic rests at its upper bound
    std::vector<std::uint8_t> is_basic;  // per column
    std::vector<double> dual;            // reduced costs per column

    double* row(int i) { return a.data() + static_cast<std::size_t>(i) * cols; }
    double& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    double at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
};

void compute_duals(Tableau& t, const std::vector<double>& cost) {
    t.dual = cost;
    for (int i = 0; i < t.rows; ++i) {
        const double cb = cost[static_cast<std::size_t>(t.basis[i])];
        if (cb == 0.0) continue;
        const double* r = t.row(i);
        for (int j = 0; j < t.cols; ++j) t.dual[j] -= cb * r[j];
    }
}

void run_phase(Tableau& t, std::int64_t iter_cap) {
    bool bland = false;
    int degen_run = 0;
    for (std::int64_t iter = 0;; ++iter) {
        if (iter > iter_cap) throw ConditioningError("simplex: iteration limit exceeded");

        int enter = -1;
        int dir = 0;
        double best_score = kEnterTol;
        for (int j = 0; j < t.cols; ++j) {
            if (t.is_basic[j] || t.lo[j] == t.up[j]) continue;
            const double d = t.dual[j];
            int cand_dir;
            double score;
            if (!t.at_up[j] && d < -kEnterTol) {
                cand_dir = +1;
                score = -d;
            } else if (t.at_up[j] && d > kEnterTol) {
                cand_dir = -1;
                score = d;
            } else {
                continue;
            }
            if (bland) {
                enter = j;
                dir = cand_dir;
                break;
            }
            if (score > best_score) {
                best_score = score;
                enter = j;
                dir = cand_dir;
            }
        }
        if (enter < 0) return;  // phase optimum

        // Ratio test: the entering variable moves until it flips to its other
        // bound or some basic variable hits one of its own bounds.
        const double t_flip = t.up[enter] - t.lo[enter];
        double t_row = kInf;
        int leave = -1;
        double leave_delta = 0.0;
        for (int i = 0; i < t.rows; ++i) {
            const double coef = t.at(i, enter);
            if (std::fabs(coef) < kCoefTol) continue;
            const double delta = -dir * coef;  // basic i change per unit step
            const int bi = t.basis[i];
            double cap = delta > 0.0 ? (t.up[bi] - t.vals[i]) / delta
                                     : (t.lo[bi] - t.vals[i]) / delta;
            if (cap < 0.0) cap = 0.0;
            if (cap < t_row - kRatioTie) {
                t_row = cap;
                leave = i;
                leave_delta = delta;
            } else if (leave >= 0 && cap <= t_row + kRatioTie && t.basis[i] < t.basis[leave]) {
                leave = i;
                leave_delta = delta;
            }
        }

        const bool flip = t_flip <= t_row;
        const double step = flip ? t_flip : t_row;
        if (!std::isfinite(step))
            throw ConditioningError("simplex: unbounded direction despite finite bounds");

        if (step <= kRatioTie) {
            if (++degen_run > 50) bland = true;
        } else {
            degen_run = 0;
        }

        if (flip) {
            for (int i = 0; i < t.rows; ++i) {
                const double coef = t.at(i, enter);
                if (coef != 0.0) t.vals[i] += (-dir * coef) * step;
            }
            t.at_up[enter] ^= 1;
            continue;
        }

        const double piv = t.at(leave, enter);
        if (std::fabs(piv) < kPivotTol) throw ConditioningError("simplex: pivot below tolerance");
        const double enter_val = dir > 0 ? t.lo[enter] + step : t.up[enter] - step;

        for (int i = 0; i < t.rows; ++i) {
            if (i == leave) continue;
            const double coef = t.at(i, enter);
            if (coef != 0.0) t.vals[i] += (-dir * coef) * step;
        }

        const int leaving = t.basis[leave];
        t.at_up[leaving] = leave_delta > 0.0 ? 1 : 0;
        t.is_basic[leaving] = 0;
        t.is_basic[enter] = 1;

        double* pr = t.row(leave);
        const double inv = 1.0 / piv;
        for (int j = 0; j < t.cols; ++j) pr[j] *= inv;
        pr[enter] = 1.0;
        for (int i = 0; i < t.rows; ++i) {
            if (i == leave) continue;
            double* ri = t.row(i);
            const double f = ri[enter];
            if (f == 0.0) continue;
            for (int j = 0; j < t.cols; ++j) ri[j] -= f * pr[j];
            ri[enter] = 0.0;
        }
        const double fd = t.dual[enter];
        if (fd != 0.0) {
            for (int j = 0; j < t.cols; ++j) t.dual[j] -= fd * pr[j];
            t.dual[enter] = 0.0;
        }

        t.basis[leave] = enter;
        t.vals[leave] = enter_val;
    }
}

double column_value(const Tableau& t, int j, const std::vector<int>& row_of) {
    if (t.is_basic[j]) return t.vals[static_cast<std::size_t>(row_of[static_cast<std::size_t>(j)])];
    return t.at_up[j] ? t.up[j] : t.lo[j];
}

}  // namespace

Solution solve_lp(const Model& model, std::span<const double> lower, std::span<const double> upper) {
    const int n = static_cast<int>(model.num_variables());
    const int m = static_cast<int>(model.num_constraints());
    if (static_cast<int>(lower.size()) != n || static_cast<int>(upper.size()) != n)
        throw Error("solve_lp: bound override size mismatch");

    Solution sol;
    for (int j = 0; j < n; ++j) {
        if (!std::isfinite(lower[j]) || !std::isfinite(upper[j]))
            throw BoundsError("solve_lp: bounds must be finite");
        if (lower[j] > upper[j]) {
            sol.status = SolveStatus::infeasible;  // empty box
            return sol;
        }
    }

    Tableau t;
    t.rows = m;
    t.cols = n + m;
    t.a.assign(static_cast<std::size_t>(t.rows) * t.cols, 0.0);
    t.lo.assign(static_cast<std::size_t>(t.cols), 0.0);
    t.up.assign(static_cast<std::size_t>(t.cols), 0.0);
    for (int j = 0; j < n; ++j) {
        t.lo[static_cast<std::size_t>(j)] = lower[j];
        t.up[static_cast<std::size_t>(j)] = upper[j];
    }

    const auto& cons = model.constraints();
    std::vector<double> start_val(static_cast<std::size_t>(m), 0.0);  // slack value at the all-lower start
    for (int i = 0; i < m; ++i) {
        const auto& c = cons[static_cast<std::size_t>(i)];
        double rowmin = 0.0, rowmax = 0.0, at_start = 0.0;
        for (const auto& [var, coeff] : c.expr.terms()) {
            const int j = var.index;
            t.at(i, j) = coeff;
            const double a = coeff * lower[j];
            const double b = coeff * upper[j];
            rowmin += std::min(a, b);
            rowmax += std::max(a, b);
            at_start += coeff * lower[j];
        }
        const int sj = n + i;
        t.at(i, sj) = 1.0;
        switch (c.sense) {
            case Sense::le:
                t.lo[static_cast<std::size_t>(sj)] = 0.0;
                t.up[static_cast<std::size_t>(sj)] = std::max(0.0, c.rhs - rowmin);
                break;
            case Sense::ge:
                t.lo[static_cast<std::size_t>(sj)] = std::min(0.0, c.rhs - rowmax);
                t.up[static_cast<std::size_t>(sj)] = 0.0;
                break;
            case Sense::eq:
                t.lo[static_cast<std::size_t>(sj)] = 0.0;
                t.up[static_cast<std::size_t>(sj)] = 0.0;
                break;
        }
        start_val[static_cast<std::size_t>(i)] = c.rhs - at_start;
    }

    // Start: structural at lower bound, slacks basic where their start value
    // fits the range, an artificial otherwise.
    t.basis.assign(static_cast<std::size_t>(m), -1);
    t.vals.assign(static_cast<std::size_t>(m), 0.0);
    t.at_up.assign(static_cast<std::size_t>(t.cols), 0);
    t.is_basic.assign(static_cast<std::size_t>(t.cols), 0);

    struct ArtRow {
        int row;
        double residual;  // signed; negative rows get negated
    };
    std::vector<ArtRow> art_rows;
    for (int i = 0; i < m; ++i) {
        const int sj = n + i;
        const double v = start_val[static_cast<std::size_t>(i)];
        const double slo = t.lo[static_cast<std::size_t>(sj)];
        const double shi = t.up[static_cast<std::size_t>(sj)];
        if (v >= slo && v <= shi) {
            t.basis[static_cast<std::size_t>(i)] = sj;
            t.vals[static_cast<std::size_t>(i)] = v;
            t.is_basic[static_cast<std::size_t>(sj)] = 1;
        } else if (v > shi) {
            t.at_up[static_cast<std::size_t>(sj)] = 1;
            art_rows.push_back({i, v - shi});
        } else {
            t.at_up[static_cast<std::size_t>(sj)] = 0;
            art_rows.push_back({i, v - slo});
        }
    }

    const int first_art = t.cols;
    if (!art_rows.empty()) {
        const int extra = static_cast<int>(art_rows.size());
        const int new_cols = t.cols + extra;
        std::vector<double> wide(static_cast<std::size_t>(t.rows) * new_cols, 0.0);
        for (int i = 0; i < t.rows; ++i)
            std::copy_n(t.row(i), t.cols, wide.begin() + static_cast<std::size_t>(i) * new_cols);
        t.a = std::move(wide);
        t.cols = new_cols;
        t.lo.resize(static_cast<std::size_t>(new_cols), 0.0);
        t.up.resize(static_cast<std::size_t>(new_cols), 0.0);
        t.at_up.resize(static_cast<std::size_t>(new_cols), 0);
        t.is_basic.resize(static_cast<std::size_t>(new_cols), 0);
        for (int k = 0; k < extra; ++k) {
            const auto [i, r] = art_rows[static_cast<std::size_t>(k)];
            const int aj = first_art + k;
            if (r < 0.0) {
                double* ri = t.row(i);
                for (int j = 0; j < first_art; ++j) ri[j] = -ri[j];
            }
            t.at(i, aj) = 1.0;
            t.lo[static_cast<std::size_t>(aj)] = 0.0;
            t.up[static_cast<std::size_t>(aj)] = std::fabs(r);
            t.basis[static_cast<std::size_t>(i)] = aj;
            t.vals[static_cast<std::size_t>(i)] = std::fabs(r);
            t.is_basic[static_cast<std::size_t>(aj)] = 1;
        }
    }

    const std::int64_t iter_cap = 20000 + 200LL * (t.rows + t.cols);

    std::vector<int> row_of(static_cast<std::size_t>(t.cols), -1);
    auto refresh_row_of = [&] {
        std::fill(row_of.begin(), row_of.end(), -1);
        for (int i = 0; i < t.rows; ++i) row_of[static_cast<std::size_t>(t.basis[i])] = i;
    };

    if (first_art < t.cols) {
        std::vector<double> phase1(static_cast<std::size_t>(t.cols), 0.0);
        for (int j = first_art; j < t.cols; ++j) phase1[static_cast<std::size_t>(j)] = 1.0;
        compute_duals(t, phase1);
        run_phase(t, iter_cap);

        refresh_row_of();
        double infeas = 0.0;
        for (int j = first_art; j < t.cols; ++j) infeas += column_value(t, j, row_of);
        if (infeas > kPhase1Tol) {
            sol.status = SolveStatus::infeasible;
            return sol;
        }
        for (int j = first_art; j < t.cols; ++j) {
            t.lo[static_cast<std::size_t>(j)] = 0.0;
            t.up[static_cast<std::size_t>(j)] = 0.0;
            t.at_up[static_cast<std::size_t>(j)] = 0;
        }
    }

    std::vector<double> phase2(static_cast<std::size_t>(t.cols), 0.0);
    for (const auto& [var, coeff] : model.objective().terms())
        phase2[static_cast<std::size_t>(var.index)] = coeff;
    compute_duals(t, phase2);
    run_phase(t, iter_cap);

    refresh_row_of();
    sol.values.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) sol.values[static_cast<std::size_t>(j)] = column_value(t, j, row_of);
    sol.objective = model.eval_objective(sol.values);
    sol.status = SolveStatus::optimal;
    return sol;
}

Solution solve_lp(const Model& model) {
    std::vector<double> lo, up;
    lo.reserve(model.num_variables());
    up.reserve(model.num_variables());
    for (const auto& v : model.variables()) {
        lo.push_back(v.lower);
        up.push_back(v.upper);
    }
    return solve_lp(model, lo, up);
}

}  // namespace triplan::milp
