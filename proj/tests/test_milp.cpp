#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <sstream>

#include "doctest.h"
#include "triplan/error.hpp"
#include "triplan/milp/model.hpp"
#include "triplan/milp/solve.hpp"

using namespace triplan;
using namespace triplan::milp;

namespace {

LinearExpression expr(std::initializer_list<std::pair<VarId, double>> terms) {
    LinearExpression e;
    for (const auto& [v, c] : terms) e.add(v, c);
    return e;
}

// Independent vertex-enumeration oracle for small LPs: tries every choice of
// n active planes (rows at equality or bounds), solves the dense linear
// system by Gaussian elimination, and keeps the best feasible point.
struct VertexOracle {
    const Model& m;

    static bool solve_dense(std::vector<std::vector<double>> a, std::vector<double> b,
                            std::vector<double>& x) {
        const int n = static_cast<int>(b.size());
        x.assign(b.size(), 0.0);
        for (int col = 0; col < n; ++col) {
            int piv = -1;
            double best = 1e-9;
            for (int r = col; r < n; ++r)
                if (std::fabs(a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]) > best) {
                    best = std::fabs(a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]);
                    piv = r;
                }
            if (piv < 0) return false;
            std::swap(a[static_cast<std::size_t>(piv)], a[static_cast<std::size_t>(col)]);
            std::swap(b[static_cast<std::size_t>(piv)], b[static_cast<std::size_t>(col)]);
            for (int r = 0; r < n; ++r) {
                if (r == col) continue;
                const double f = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] /
                                 a[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
                if (f == 0.0) continue;
                for (int cc = col; cc < n; ++cc)
                    a[static_cast<std::size_t>(r)][static_cast<std::size_t>(cc)] -=
                        f * a[static_cast<std::size_t>(col)][static_cast<std::size_t>(cc)];
                b[static_cast<std::size_t>(r)] -= f * b[static_cast<std::size_t>(col)];
            }
        }
        for (int i = 0; i < n; ++i)
            x[static_cast<std::size_t>(i)] = b[static_cast<std::size_t>(i)] /
                                             a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
        return true;
    }

    double best_objective() const {
        const int n = static_cast<int>(m.num_variables());
        struct Plane {
            std::vector<double> a;
            double b;
        };
        std::vector<Plane> planes;
        for (const auto& c : m.constraints()) {
            Plane p{std::vector<double>(static_cast<std::size_t>(n), 0.0), c.rhs};
            for (const auto& [v, coeff] : c.expr.terms())
                p.a[static_cast<std::size_t>(v.index)] = coeff;
            planes.push_back(std::move(p));
        }
        for (int j = 0; j < n; ++j) {
            Plane lo{std::vector<double>(static_cast<std::size_t>(n), 0.0),
                     m.variables()[static_cast<std::size_t>(j)].lower};
            lo.a[static_cast<std::size_t>(j)] = 1.0;
            planes.push_back(lo);
            Plane hi{std::vector<double>(static_cast<std::size_t>(n), 0.0),
                     m.variables()[static_cast<std::size_t>(j)].upper};
            hi.a[static_cast<std::size_t>(j)] = 1.0;
            planes.push_back(hi);
        }

        const auto feasible = [&](const std::vector<double>& x) {
            for (int j = 0; j < n; ++j) {
                const auto& v = m.variables()[static_cast<std::size_t>(j)];
                if (x[static_cast<std::size_t>(j)] < v.lower - 1e-7 ||
                    x[static_cast<std::size_t>(j)] > v.upper + 1e-7)
                    return false;
            }
            for (const auto& c : m.constraints()) {
                const double lhs = c.expr.value(x);
                if (c.sense == Sense::le && lhs > c.rhs + 1e-7) return false;
                if (c.sense == Sense::ge && lhs < c.rhs - 1e-7) return false;
                if (c.sense == Sense::eq && std::fabs(lhs - c.rhs) > 1e-7) return false;
            }
            return true;
        };

        double best = std::numeric_limits<double>::infinity();
        const int total = static_cast<int>(planes.size());
        std::vector<int> idx(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
        for (;;) {
            std::vector<std::vector<double>> a;
            std::vector<double> b;
            for (const int i : idx) {
                a.push_back(planes[static_cast<std::size_t>(i)].a);
                b.push_back(planes[static_cast<std::size_t>(i)].b);
            }
            std::vector<double> x;
            if (solve_dense(a, b, x) && feasible(x)) best = std::min(best, m.eval_objective(x));
            int k = n - 1;
            while (k >= 0 && idx[static_cast<std::size_t>(k)] == total - n + k) --k;
            if (k < 0) break;
            ++idx[static_cast<std::size_t>(k)];
            for (int r = k + 1; r < n; ++r)
                idx[static_cast<std::size_t>(r)] = idx[static_cast<std::size_t>(r) - 1] + 1;
        }
        return best;
    }
};

}  // namespace

TEST_CASE("add_variable issues dense handles and checks bounds") {
    Model m;
    const VarId a = m.add_variable(VarKind::continuous, 0.0, 5.0, "a");
    CHECK(a.index == 0);
    const VarId b = m.add_variable(VarKind::binary, 0.0, 1.0, "b");
    CHECK(b.index == 1);
    CHECK(m.variables()[1].kind == VarKind::binary);
    CHECK_THROWS_AS(m.add_variable(VarKind::continuous, 3.0, 2.0, "bad"), BoundsError);
    CHECK_THROWS_AS(m.add_variable(VarKind::binary, 0.0, 2.0, "bad_bin"), BoundsError);
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(m.add_variable(VarKind::continuous, 0.0, inf, "unbounded"), BoundsError);
}

TEST_CASE("linear expression merges and drops zero coefficients") {
    Model m;
    const VarId a = m.add_variable(VarKind::continuous, 0.0, 1.0, "a");
    LinearExpression e;
    e.add(a, 2.0);
    e.add(a, -2.0);
    CHECK(e.terms().empty());
    e.add(a, 1.5);
    CHECK(e.terms().size() == 1);
}

TEST_CASE("solve_lp: min x with x >= 0") {
    Model m;
    const VarId x = m.add_variable(VarKind::continuous, 0.0, 10.0, "x");
    m.set_objective(expr({{x, 1.0}}));
    const Solution s = solve_lp(m);
    REQUIRE(s.optimal());
    CHECK(s.objective == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(s.values[0] == doctest::Approx(0.0));
}

TEST_CASE("solve_lp: symmetric vertex of x + y <= 1") {
    Model m;
    const VarId x = m.add_variable(VarKind::continuous, 0.0, 1.0, "x");
    const VarId y = m.add_variable(VarKind::continuous, 0.0, 1.0, "y");
    m.add_le(expr({{x, 1.0}, {y, 1.0}}), 1.0);
    m.set_objective(expr({{x, -1.0}, {y, -1.0}}));
    const Solution s = solve_lp(m);
    REQUIRE(s.optimal());
    CHECK(s.objective == doctest::Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("solve_lp: infeasible and equality handling") {
    Model m;
    const VarId x = m.add_variable(VarKind::continuous, 0.0, 1.0, "x");
    m.add_ge(expr({{x, 1.0}}), 2.0);
    CHECK(solve_lp(m).status == SolveStatus::infeasible);

    Model m2;
    const VarId a = m2.add_variable(VarKind::continuous, 0.0, 4.0, "a");
    const VarId b = m2.add_variable(VarKind::continuous, 0.0, 4.0, "b");
    m2.add_eq(expr({{a, 1.0}, {b, 1.0}}), 3.0);
    m2.set_objective(expr({{a, 1.0}, {b, 2.0}}));
    const Solution s = solve_lp(m2);
    REQUIRE(s.optimal());
    CHECK(s.objective == doctest::Approx(3.0).epsilon(1e-10));  // all weight on a
}

TEST_CASE("solve_lp: random LPs match vertex enumeration") {
    std::mt19937_64 rng(42);
    auto uni = [&](double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    };
    for (int trial = 0; trial < 30; ++trial) {
        Model m;
        std::vector<VarId> vars;
        for (int j = 0; j < 4; ++j)
            vars.push_back(m.add_variable(VarKind::continuous, 0.0, uni(0.5, 3.0)));
        LinearExpression obj;
        for (const auto v : vars) obj.add(v, uni(-2.0, 2.0));
        m.set_objective(std::move(obj));
        for (int i = 0; i < 4; ++i) {
            LinearExpression row;
            for (const auto v : vars)
                if (uni(0.0, 1.0) < 0.7) row.add(v, uni(-1.5, 1.5));
            m.add_le(std::move(row), uni(0.5, 3.0));
        }
        const Solution s = solve_lp(m);
        REQUIRE(s.optimal());  // box-bounded with slack-positive rows
        const double oracle = VertexOracle{m}.best_objective();
        REQUIRE(std::isfinite(oracle));
        CHECK(std::fabs(s.objective - oracle) < 1e-8);
    }
}

TEST_CASE("solve_lp: objective equals recomputation from values") {
    std::mt19937_64 rng(7);
    auto uni = [&](double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    };
    for (int trial = 0; trial < 20; ++trial) {
        Model m;
        std::vector<VarId> vars;
        for (int j = 0; j < 6; ++j)
            vars.push_back(m.add_variable(VarKind::continuous, -uni(0, 2), uni(0.5, 3)));
        LinearExpression obj(uni(-1, 1));
        for (const auto v : vars) obj.add(v, uni(-2, 2));
        m.set_objective(std::move(obj));
        for (int i = 0; i < 5; ++i) {
            LinearExpression row;
            for (const auto v : vars)
                if (uni(0, 1) < 0.6) row.add(v, uni(-1, 1));
            m.add_le(std::move(row), uni(0.5, 4));
        }
        const Solution s = solve_lp(m);
        REQUIRE(s.optimal());
        CHECK(std::fabs(s.objective - m.eval_objective(s.values)) <= 1e-8);
        CHECK(m.max_violation(s.values) <= 1e-7);
    }
}

TEST_CASE("solve_mip: pure LP passes through") {
    Model m;
    const VarId x = m.add_variable(VarKind::continuous, 0.0, 9.0, "x");
    m.add_ge(expr({{x, 1.0}}), 2.5);
    m.set_objective(expr({{x, 1.0}}));
    const Solution lp = solve_lp(m);
    const Solution mip = solve_mip(m);
    REQUIRE(mip.optimal());
    CHECK(mip.objective == doctest::Approx(lp.objective));
    CHECK(mip.values == lp.values);
}

TEST_CASE("solve_mip: integer ceiling") {
    Model m;
    const VarId x = m.add_variable(VarKind::integer, 0.0, 10.0, "x");
    m.add_ge(expr({{x, 1.0}}), 2.3);
    m.set_objective(expr({{x, 1.0}}));
    const Solution s = solve_mip(m);
    REQUIRE(s.optimal());
    CHECK(s.objective == doctest::Approx(3.0));
    CHECK(s.values[0] == doctest::Approx(3.0));
}

TEST_CASE("solve_mip: infeasible integer model") {
    Model m;
    const VarId x = m.add_variable(VarKind::binary, 0.0, 1.0, "x");
    m.add_ge(expr({{x, 1.0}}), 0.4);
    m.add_le(expr({{x, 1.0}}), 0.6);
    CHECK(solve_mip(m).status == SolveStatus::infeasible);
}

TEST_CASE("solve_mip: node limit reports status") {
    Model m;
    std::vector<VarId> vars;
    for (int j = 0; j < 6; ++j) vars.push_back(m.add_variable(VarKind::binary, 0.0, 1.0));
    LinearExpression row, obj;
    for (int j = 0; j < 6; ++j) {
        row.add(vars[static_cast<std::size_t>(j)], 1.0 + 0.1 * j);
        obj.add(vars[static_cast<std::size_t>(j)], -(1.0 + 0.07 * j));
    }
    m.add_le(std::move(row), 2.5);
    m.set_objective(std::move(obj));
    SolverConfig cfg;
    cfg.max_nodes = 1;
    CHECK(solve_mip(m, cfg).status == SolveStatus::node_limit);
}

TEST_CASE("solve_mip: bound history is non-decreasing") {
    Model m;
    std::mt19937_64 rng(99);
    auto uni = [&](double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    };
    std::vector<VarId> vars;
    for (int j = 0; j < 8; ++j) vars.push_back(m.add_variable(VarKind::binary, 0.0, 1.0));
    for (int j = 0; j < 4; ++j) vars.push_back(m.add_variable(VarKind::continuous, 0.0, 2.0));
    LinearExpression obj;
    for (const auto v : vars) obj.add(v, uni(-2.0, 1.0));
    m.set_objective(std::move(obj));
    for (int i = 0; i < 6; ++i) {
        LinearExpression row;
        for (const auto v : vars)
            if (uni(0.0, 1.0) < 0.5) row.add(v, uni(-1.0, 1.5));
        m.add_le(std::move(row), uni(0.5, 2.5));
    }
    SolverConfig cfg;
    cfg.record_bound_history = true;
    const Solution s = solve_mip(m, cfg);
    REQUIRE(s.optimal());
    REQUIRE(!s.bound_history.empty());
    for (std::size_t i = 1; i < s.bound_history.size(); ++i)
        CHECK(s.bound_history[i] >= s.bound_history[i - 1] - 1e-9);
    CHECK(s.bound_history.back() <= s.objective + 1e-9);
}

TEST_CASE("solve_mip: determinism is bit exact") {
    Model m;
    std::mt19937_64 rng(123);
    auto uni = [&](double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    };
    std::vector<VarId> vars;
    for (int j = 0; j < 7; ++j) vars.push_back(m.add_variable(VarKind::binary, 0.0, 1.0));
    for (int j = 0; j < 5; ++j) vars.push_back(m.add_variable(VarKind::continuous, 0.0, 3.0));
    LinearExpression obj;
    for (const auto v : vars) obj.add(v, uni(-1.0, 1.0));
    m.set_objective(std::move(obj));
    for (int i = 0; i < 5; ++i) {
        LinearExpression row;
        for (const auto v : vars)
            if (uni(0.0, 1.0) < 0.5) row.add(v, uni(-1.0, 1.0));
        m.add_le(std::move(row), uni(0.8, 3.0));
    }
    const Solution a = solve_mip(m);
    const Solution b = solve_mip(m);
    REQUIRE(a.optimal());
    REQUIRE(b.optimal());
    REQUIRE(a.values.size() == b.values.size());
    CHECK(std::memcmp(a.values.data(), b.values.data(), a.values.size() * sizeof(double)) == 0);
    CHECK(a.objective == b.objective);
}

TEST_CASE("lp text dump lists one constraint per line") {
    Model m;
    const VarId x = m.add_variable(VarKind::continuous, 0.0, 2.0, "x");
    const VarId y = m.add_variable(VarKind::binary, 0.0, 1.0, "y");
    m.add_le(expr({{x, 1.0}, {y, -2.0}}), 5.0, "cap");
    m.set_objective(expr({{x, 2.0}, {y, 3.0}}));
    std::ostringstream out;
    m.write_lp_text(out);
    const std::string text = out.str();
    CHECK(text.find("min:") != std::string::npos);
    CHECK(text.find("cap:") != std::string::npos);
    CHECK(text.find("<= 5") != std::string::npos);
    CHECK(text.find(" bin") != std::string::npos);
}
