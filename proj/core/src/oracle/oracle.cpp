#include "triplan/oracle/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "triplan/error.hpp"

// Independent brute-force validation path. The inner LP here is the classic
// standard-form two-phase tableau (shift variables to y >= 0, explicit rows
// for upper bounds, slack/surplus/artificial columns), deliberately a
// different algorithm and code path from the production bounded-variable
// simplex so that agreement between the two is meaningful evidence.

namespace triplan::oracle {

namespace {

using milp::Sense;
using milp::SolveStatus;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = 1e-9;

struct StdRow {
    std::vector<std::pair<int, double>> terms;  // (column, coefficient) over kept variables
    Sense sense = Sense::le;
    double rhs = 0.0;
};

struct StdLpResult {
    SolveStatus status = SolveStatus::infeasible;
    std::vector<double> x;  // kept-variable values in shifted space (y = x - lower)
};

/// min c'y over the rows; every kept variable j has 0 <= y_j <= range[j].
StdLpResult standard_two_phase(const std::vector<double>& range, std::vector<StdRow> rows,
                               const std::vector<double>& cost) {
    const int n = static_cast<int>(range.size());

    // Upper bounds become explicit rows.
    for (int j = 0; j < n; ++j) {
        StdRow r;
        r.terms.emplace_back(j, 1.0);
        r.sense = Sense::le;
        r.rhs = range[static_cast<std::size_t>(j)];
        rows.push_back(std::move(r));
    }
    const int m = static_cast<int>(rows.size());

    // Normalize to rhs >= 0.
    for (auto& r : rows) {
        if (r.rhs < 0.0) {
            for (auto& [j, c] : r.terms) c = -c;
            r.rhs = -r.rhs;
            if (r.sense == Sense::le)
                r.sense = Sense::ge;
            else if (r.sense == Sense::ge)
                r.sense = Sense::le;
        }
    }

    int n_slack = 0;
    for (const auto& r : rows)
        if (r.sense != Sense::eq) ++n_slack;
    int n_art = 0;
    for (const auto& r : rows)
        if (r.sense != Sense::le) ++n_art;

    const int cols = n + n_slack + n_art;
    std::vector<double> tab(static_cast<std::size_t>(m) * cols, 0.0);
    std::vector<double> rhs(static_cast<std::size_t>(m), 0.0);
    std::vector<int> basis(static_cast<std::size_t>(m), -1);
    auto at = [&](int i, int j) -> double& {
        return tab[static_cast<std::size_t>(i) * cols + j];
    };

    int slack_at = n;
    int art_at = n + n_slack;
    const int first_art = art_at;
    for (int i = 0; i < m; ++i) {
        const auto& r = rows[static_cast<std::size_t>(i)];
        for (const auto& [j, c] : r.terms) at(i, j) += c;
        rhs[static_cast<std::size_t>(i)] = r.rhs;
        if (r.sense == Sense::le) {
            at(i, slack_at) = 1.0;
            basis[static_cast<std::size_t>(i)] = slack_at++;
        } else if (r.sense == Sense::ge) {
            at(i, slack_at++) = -1.0;
            at(i, art_at) = 1.0;
            basis[static_cast<std::size_t>(i)] = art_at++;
        } else {
            at(i, art_at) = 1.0;
            basis[static_cast<std::size_t>(i)] = art_at++;
        }
    }

    std::vector<double> z(static_cast<std::size_t>(cols), 0.0);  // reduced-cost row
    auto price = [&](const std::vector<double>& c) {
        z.assign(static_cast<std::size_t>(cols), 0.0);
        for (int j = 0; j < cols; ++j) z[static_cast<std::size_t>(j)] = j < static_cast<int>(c.size()) ? c[static_cast<std::size_t>(j)] : 0.0;
        for (int i = 0; i < m; ++i) {
            const int b = basis[static_cast<std::size_t>(i)];
            const double cb = b < static_cast<int>(c.size()) ? c[static_cast<std::size_t>(b)] : 0.0;
            if (cb == 0.0) continue;
            for (int j = 0; j < cols; ++j) z[static_cast<std::size_t>(j)] -= cb * at(i, j);
        }
    };

    auto pivot = [&](int pr, int pc) {
        const double p = at(pr, pc);
        const double inv = 1.0 / p;
        for (int j = 0; j < cols; ++j) at(pr, j) *= inv;
        rhs[static_cast<std::size_t>(pr)] *= inv;
        at(pr, pc) = 1.0;
        for (int i = 0; i < m; ++i) {
            if (i == pr) continue;
            const double f = at(i, pc);
            if (f == 0.0) continue;
            for (int j = 0; j < cols; ++j) at(i, j) -= f * at(pr, j);
            at(i, pc) = 0.0;
            rhs[static_cast<std::size_t>(i)] -= f * rhs[static_cast<std::size_t>(pr)];
            if (rhs[static_cast<std::size_t>(i)] < 0.0 && rhs[static_cast<std::size_t>(i)] > -1e-11)
                rhs[static_cast<std::size_t>(i)] = 0.0;
        }
        const double fz = z[static_cast<std::size_t>(pc)];
        if (fz != 0.0) {
            for (int j = 0; j < cols; ++j) z[static_cast<std::size_t>(j)] -= fz * at(pr, j);
            z[static_cast<std::size_t>(pc)] = 0.0;
        }
        basis[static_cast<std::size_t>(pr)] = pc;
    };

    // banned columns can never enter (artificials in phase 2)
    std::vector<std::uint8_t> banned(static_cast<std::size_t>(cols), 0);

    auto iterate = [&](std::int64_t cap) -> bool {  // returns false when unbounded
        bool bland = false;
        int stall = 0;
        for (std::int64_t it = 0;; ++it) {
            if (it > cap) throw ConditioningError("oracle lp: iteration limit");
            int pc = -1;
            double best = -kEps;
            for (int j = 0; j < cols; ++j) {
                if (banned[static_cast<std::size_t>(j)]) continue;
                const double d = z[static_cast<std::size_t>(j)];
                if (d < best) {
                    if (bland) {
                        pc = j;
                        break;
                    }
                    best = d;
                    pc = j;
                }
            }
            if (pc < 0) return true;
            int pr = -1;
            double best_ratio = kInf;
            for (int i = 0; i < m; ++i) {
                const double a = at(i, pc);
                if (a <= 1e-11) continue;
                const double ratio = rhs[static_cast<std::size_t>(i)] / a;
                if (ratio < best_ratio - 1e-12) {
                    best_ratio = ratio;
                    pr = i;
                } else if (pr >= 0 && ratio <= best_ratio + 1e-12 &&
                           basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(pr)]) {
                    pr = i;
                }
            }
            if (pr < 0) return false;  // unbounded column
            if (best_ratio <= 1e-12) {
                if (++stall > 40) bland = true;
            } else {
                stall = 0;
            }
            pivot(pr, pc);
        }
    };

    const std::int64_t cap = 20000 + 200LL * (m + cols);

    StdLpResult out;
    if (n_art > 0) {
        std::vector<double> phase1(static_cast<std::size_t>(cols), 0.0);
        for (int j = first_art; j < cols; ++j) phase1[static_cast<std::size_t>(j)] = 1.0;
        price(phase1);
        if (!iterate(cap)) throw ConditioningError("oracle lp: unbounded phase 1");
        double infeas = 0.0;
        for (int i = 0; i < m; ++i)
            if (basis[static_cast<std::size_t>(i)] >= first_art)
                infeas += rhs[static_cast<std::size_t>(i)];
        if (infeas > 1e-8) {
            out.status = SolveStatus::infeasible;
            return out;
        }
    }
    for (int j = first_art; j < cols; ++j) banned[static_cast<std::size_t>(j)] = 1;

    std::vector<double> phase2(static_cast<std::size_t>(cols), 0.0);
    for (int j = 0; j < n; ++j) phase2[static_cast<std::size_t>(j)] = cost[static_cast<std::size_t>(j)];
    price(phase2);
    if (!iterate(cap)) {
        out.status = SolveStatus::unbounded;
        return out;
    }

    out.x.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < m; ++i) {
        const int b = basis[static_cast<std::size_t>(i)];
        if (b < n) out.x[static_cast<std::size_t>(b)] = rhs[static_cast<std::size_t>(i)];
    }
    out.status = SolveStatus::optimal;
    return out;
}

}  // namespace

OracleResult enumerate_mip(const milp::Model& model, int limit) {
    OracleResult result;
    const auto& vars = model.variables();
    for (std::size_t j = 0; j < vars.size(); ++j)
        if (vars[j].is_integral()) result.integer_vars.push_back(milp::VarId{static_cast<int>(j)});

    if (static_cast<int>(result.integer_vars.size()) > limit)
        throw Error("enumerate_mip: " + std::to_string(result.integer_vars.size()) +
                    " integer variables exceed the enumeration limit of " + std::to_string(limit));

    struct Dom {
        int var;
        long lo, hi;
    };
    std::vector<Dom> domains;
    for (const auto id : result.integer_vars) {
        const auto& v = vars[static_cast<std::size_t>(id.index)];
        const long lo = static_cast<long>(std::ceil(v.lower - 1e-9));
        const long hi = static_cast<long>(std::floor(v.upper + 1e-9));
        if (hi < lo) {
            result.status = SolveStatus::infeasible;  // empty integer domain
            return result;
        }
        if (hi - lo + 1 > 3)
            throw Error("enumerate_mip: variable '" + v.name + "' spans " +
                        std::to_string(hi - lo + 1) + " integer values (limit 3)");
        domains.push_back({id.index, lo, hi});
    }

    // Continuous sub-model layout.
    std::vector<int> cont_col(vars.size(), -1);
    std::vector<double> range, shift, cost;
    for (std::size_t j = 0; j < vars.size(); ++j) {
        if (vars[j].is_integral()) continue;
        cont_col[j] = static_cast<int>(range.size());
        range.push_back(vars[j].upper - vars[j].lower);
        shift.push_back(vars[j].lower);
    }
    cost.assign(range.size(), 0.0);
    double cont_const = model.objective().constant();
    for (const auto& [var, coeff] : model.objective().terms()) {
        const int cc = cont_col[static_cast<std::size_t>(var.index)];
        if (cc >= 0)
            cost[static_cast<std::size_t>(cc)] = coeff;
    }
    // Shifting y = x - lo adds a constant to the objective.
    for (std::size_t j = 0; j < vars.size(); ++j) {
        const int cc = cont_col[j];
        if (cc >= 0) cont_const += cost[static_cast<std::size_t>(cc)] * shift[static_cast<std::size_t>(cc)];
    }

    std::vector<long> assignment(domains.size());
    for (std::size_t k = 0; k < domains.size(); ++k) assignment[k] = domains[k].lo;

    bool have_best = false;
    double best_obj = kInf;

    const auto& cons = model.constraints();
    for (;;) {
        ++result.assignments_tried;

        // Build the residual LP for this assignment.
        std::vector<double> int_val(vars.size(), 0.0);
        for (std::size_t k = 0; k < domains.size(); ++k)
            int_val[static_cast<std::size_t>(domains[k].var)] = static_cast<double>(assignment[k]);

        bool assignment_ok = true;
        for (std::size_t k = 0; k < domains.size() && assignment_ok; ++k) {
            const auto& v = vars[static_cast<std::size_t>(domains[k].var)];
            const double x = int_val[static_cast<std::size_t>(domains[k].var)];
            if (x < v.lower - 1e-9 || x > v.upper + 1e-9) assignment_ok = false;
        }

        std::vector<StdRow> rows;
        if (assignment_ok) {
            for (const auto& c : cons) {
                StdRow r;
                r.sense = c.sense;
                double rhs = c.rhs;
                for (const auto& [var, coeff] : c.expr.terms()) {
                    const std::size_t j = static_cast<std::size_t>(var.index);
                    const int cc = cont_col[j];
                    if (cc < 0) {
                        rhs -= coeff * int_val[j];
                    } else {
                        r.terms.emplace_back(cc, coeff);
                        rhs -= coeff * shift[static_cast<std::size_t>(cc)];
                    }
                }
                if (r.terms.empty()) {
                    const bool ok = (c.sense == Sense::le && rhs >= -1e-7) ||
                                    (c.sense == Sense::ge && rhs <= 1e-7) ||
                                    (c.sense == Sense::eq && std::fabs(rhs) <= 1e-7);
                    if (!ok) {
                        assignment_ok = false;
                        break;
                    }
                    continue;
                }
                r.rhs = rhs;
                rows.push_back(std::move(r));
            }
        }

        SolveStatus inner = SolveStatus::infeasible;
        if (assignment_ok) {
            const StdLpResult lp = standard_two_phase(range, std::move(rows), cost);
            inner = lp.status;
            if (lp.status == SolveStatus::optimal) {
                double obj = cont_const;
                for (std::size_t k = 0; k < cost.size(); ++k)
                    obj += cost[k] * lp.x[k];
                for (const auto& [var, coeff] : model.objective().terms())
                    if (cont_col[static_cast<std::size_t>(var.index)] < 0)
                        obj += coeff * int_val[static_cast<std::size_t>(var.index)];
                if (!have_best || obj < best_obj) {
                    have_best = true;
                    best_obj = obj;
                    result.values.assign(vars.size(), 0.0);
                    for (std::size_t j = 0; j < vars.size(); ++j) {
                        const int cc = cont_col[j];
                        result.values[j] = cc < 0 ? int_val[j]
                                                  : lp.x[static_cast<std::size_t>(cc)] +
                                                        shift[static_cast<std::size_t>(cc)];
                    }
                    result.best_assignment.assign(assignment.begin(), assignment.end());
                }
            }
        }
        result.inner_status.push_back(inner);

        // Advance the odometer.
        std::size_t k = domains.size();
        while (k > 0) {
            --k;
            if (assignment[k] < domains[k].hi) {
                ++assignment[k];
                for (std::size_t r = k + 1; r < domains.size(); ++r) assignment[r] = domains[r].lo;
                break;
            }
            if (k == 0) {
                k = domains.size() + 1;  // odometer exhausted
                break;
            }
        }
        if (domains.empty() || k == domains.size() + 1) break;
    }

    if (have_best) {
        result.status = SolveStatus::optimal;
        result.objective = best_obj;
    } else {
        result.status = SolveStatus::infeasible;
    }
    return result;
}

namespace {

CompareVerdict compare_impl(const milp::Model& model, milp::SolveStatus sa,
                            const std::vector<double>& va, double oa, milp::SolveStatus sb,
                            const std::vector<double>& vb, double ob, double tol) {
    CompareVerdict v;
    if (sa != SolveStatus::optimal && sb != SolveStatus::optimal) {
        v.pass = sa == sb;
        return v;
    }
    if (sa != sb) {
        v.pass = false;
        v.objective_delta = kInf;
        return v;
    }
    v.objective_delta = std::fabs(oa - ob);
    v.worst_violation_a = model.max_violation(va);
    v.worst_violation_b = model.max_violation(vb);
    v.pass = v.objective_delta <= tol;
    return v;
}

}  // namespace

CompareVerdict compare_solutions(const milp::Model& model, const milp::Solution& a,
                                 const OracleResult& b, double tol) {
    return compare_impl(model, a.status, a.values, a.objective, b.status, b.values, b.objective,
                        tol);
}

CompareVerdict compare_solutions(const milp::Model& model, const milp::Solution& a,
                                 const milp::Solution& b, double tol) {
    return compare_impl(model, a.status, a.values, a.objective, b.status, b.values, b.objective,
                        tol);
}

}  // namespace triplan::oracle
