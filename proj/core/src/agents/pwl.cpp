#include "triplan/agents/pwl.hpp"

#include <algorithm>
#include <cmath>

#include "triplan/error.hpp"

namespace triplan::agents {

namespace {

double signed_square(double x) { return x * std::fabs(x); }

}  // namespace

double PwlGrid::interpolate(double x) const {
    const int seg = segments();
    if (x <= breakpoints.front()) return images.front();
    if (x >= breakpoints.back()) return images.back();
    for (int k = 0; k < seg; ++k) {
        const double a = breakpoints[static_cast<std::size_t>(k)];
        const double b = breakpoints[static_cast<std::size_t>(k) + 1];
        if (x <= b) {
            const double fa = images[static_cast<std::size_t>(k)];
            const double fb = images[static_cast<std::size_t>(k) + 1];
            return fa + (fb - fa) * (x - a) / (b - a);
        }
    }
    return images.back();
}

double PwlGrid::max_chord_error() const {
    // On [a, b], e(x) = chord(x) - x|x| has e'(x) = slope - 2|x|; checking the
    // interior critical points +-slope/2 is exact.
    double worst = 0.0;
    for (int k = 0; k < segments(); ++k) {
        const double a = breakpoints[static_cast<std::size_t>(k)];
        const double b = breakpoints[static_cast<std::size_t>(k) + 1];
        const double fa = images[static_cast<std::size_t>(k)];
        const double fb = images[static_cast<std::size_t>(k) + 1];
        const double slope = (fb - fa) / (b - a);
        for (const double x : {slope / 2.0, -slope / 2.0}) {
            if (x <= a || x >= b) continue;
            const double chord = fa + slope * (x - a);
            worst = std::max(worst, std::fabs(chord - signed_square(x)));
        }
    }
    return worst;
}

double PwlGrid::max_flow_error() const {
    double worst = 0.0;
    for (int k = 0; k < segments(); ++k) {
        const double a = breakpoints[static_cast<std::size_t>(k)];
        const double b = breakpoints[static_cast<std::size_t>(k) + 1];
        const double fa = images[static_cast<std::size_t>(k)];
        const double fb = images[static_cast<std::size_t>(k) + 1];
        const double slope = (fb - fa) / (b - a);
        double seg_err = 0.0;
        for (const double x : {slope / 2.0, -slope / 2.0}) {
            if (x <= a || x >= b) continue;
            const double chord = fa + slope * (x - a);
            seg_err = std::max(seg_err, std::fabs(chord - signed_square(x)));
        }
        if (slope > 0.0) worst = std::max(worst, seg_err / slope);
    }
    return worst;
}

PwlGrid make_pwl_grid(double gf_max, int seg) {
    if (!(gf_max > 0.0)) throw Error("make_pwl_grid: gf_max must be positive");
    if (seg < 1) throw Error("make_pwl_grid: need at least one segment");
    PwlGrid grid;
    grid.breakpoints.reserve(static_cast<std::size_t>(seg) + 1);
    grid.images.reserve(static_cast<std::size_t>(seg) + 1);
    for (int k = 0; k <= seg; ++k) {
        // Evaluated symmetrically so b_0 = -gf_max and b_seg = +gf_max exactly.
        const double b = gf_max * (2.0 * k - seg) / seg;
        grid.breakpoints.push_back(b);
        grid.images.push_back(signed_square(b));
    }
    return grid;
}

QuadPenaltyGrid make_quad_grid(double dmax, int knots_per_side) {
    if (!(dmax > 0.0)) throw Error("make_quad_grid: dmax must be positive");
    if (knots_per_side < 1) throw Error("make_quad_grid: need at least one knot per side");
    QuadPenaltyGrid grid;
    const int J = knots_per_side;
    grid.knots.reserve(2 * static_cast<std::size_t>(J) + 1);
    grid.images.reserve(2 * static_cast<std::size_t>(J) + 1);
    for (int k = -J; k <= J; ++k) {
        const double d = dmax * k / J;
        grid.knots.push_back(d);
        grid.images.push_back(d * d);
    }
    return grid;
}

std::vector<milp::VarId> emit_consensus_penalty(milp::Model& model, milp::VarId x, double lambda,
                                                double ip, double rho, const QuadPenaltyGrid& grid,
                                                const std::string& prefix) {
    const int segs = static_cast<int>(grid.knots.size()) - 1;
    std::vector<milp::VarId> fill;
    fill.reserve(static_cast<std::size_t>(segs));

    // x = ip + knots[0] + sum_k fill_k * (knots[k+1] - knots[k])
    milp::LinearExpression tie;
    tie.add(x, 1.0);
    for (int k = 0; k < segs; ++k) {
        const milp::VarId f = model.add_variable(milp::VarKind::continuous, 0.0, 1.0,
                                                 prefix + ".fill" + std::to_string(k));
        fill.push_back(f);
        tie.add(f, -(grid.knots[static_cast<std::size_t>(k) + 1] -
                     grid.knots[static_cast<std::size_t>(k)]));
    }
    model.add_eq(std::move(tie), ip + grid.knots.front(), prefix + ".tie");

    // lambda * (x - ip) + (rho/2) * image(d); the image slopes increase
    // strictly, so minimization fills segments in order without binaries.
    auto& obj = model.objective();
    obj.add(x, lambda);
    obj.add_constant(-lambda * ip + 0.5 * rho * grid.images.front());
    for (int k = 0; k < segs; ++k)
        obj.add(fill[static_cast<std::size_t>(k)],
                0.5 * rho * (grid.images[static_cast<std::size_t>(k) + 1] -
                             grid.images[static_cast<std::size_t>(k)]));
    return fill;
}

}  // namespace triplan::agents
