#pragma once

#include <string>
#include <vector>

#include "triplan/milp/model.hpp"

namespace triplan::agents {

/// Uniform incremental-linearization grid for the signed-quadratic gas-flow
/// relation f(x) = x|x| over [-flow_max, flow_max].
struct PwlGrid {
    std::vector<double> breakpoints;  // seg + 1, strictly increasing
    std::vector<double> images;       // b * |b| at each breakpoint

    [[nodiscard]] int segments() const noexcept {
        return static_cast<int>(breakpoints.size()) - 1;
    }

    /// PWL image at x (exact at every breakpoint).
    [[nodiscard]] double interpolate(double x) const;

    /// Largest |f - chord| over the grid, in image space.
    [[nodiscard]] double max_chord_error() const;

    /// Largest flow-space inversion error: for a pinned image value, how far
    /// the PWL inverse can sit from the exact Weymouth inverse.
    [[nodiscard]] double max_flow_error() const;
};

/// seg + 1 uniform breakpoints over [-gf_max, gf_max] with images b|b|.
PwlGrid make_pwl_grid(double gf_max, int seg);

/// Symmetric uniform grid for the consensus penalty quadratic d^2 over
/// [-dmax, dmax] with 2 * knots_per_side segments; zero is always a knot, so
/// a subproblem can close its consensus gap exactly.
struct QuadPenaltyGrid {
    std::vector<double> knots;
    std::vector<double> images;  // d^2

    [[nodiscard]] double spacing() const { return knots[1] - knots[0]; }
    /// Worst overestimate of d^2 by the chord interpolant.
    [[nodiscard]] double max_chord_error() const {
        const double w = spacing();
        return w * w / 4.0;
    }
};

QuadPenaltyGrid make_quad_grid(double dmax, int knots_per_side);

/// Adds lambda * x + (rho / 2) * (x - ip)^2 to the model objective, with the
/// quadratic replaced by its convex piecewise-linear overestimate on `grid`
/// (fill variables only; convexity makes selector binaries unnecessary).
/// Returns the segment fill variables.
std::vector<milp::VarId> emit_consensus_penalty(milp::Model& model, milp::VarId x, double lambda,
                                                double ip, double rho, const QuadPenaltyGrid& grid,
                                                const std::string& prefix);

}  // namespace triplan::agents
