#pragma once

#include <cstddef>
#include <vector>

#include "triplan/error.hpp"
#include "triplan/milp/solve.hpp"

namespace triplan {

/// Dense array over coupling channels, indexed (site, ries, period) where a
/// site is a gas node or an electric bus.
class ChannelArray {
public:
    ChannelArray() = default;
    ChannelArray(int sites, int ries, int horizon, double fill = 0.0)
        : sites_(sites), ries_(ries), horizon_(horizon),
          data_(static_cast<std::size_t>(sites) * ries * horizon, fill) {}

    [[nodiscard]] int sites() const noexcept { return sites_; }
    [[nodiscard]] int ries() const noexcept { return ries_; }
    [[nodiscard]] int horizon() const noexcept { return horizon_; }
    [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }

    [[nodiscard]] double& at(int site, int h, int t) {
        return data_[index(site, h, t)];
    }
    [[nodiscard]] double at(int site, int h, int t) const {
        return data_[index(site, h, t)];
    }
    [[nodiscard]] const std::vector<double>& data() const noexcept { return data_; }
    [[nodiscard]] std::vector<double>& data() noexcept { return data_; }

    [[nodiscard]] bool same_shape(const ChannelArray& o) const noexcept {
        return sites_ == o.sites_ && ries_ == o.ries_ && horizon_ == o.horizon_;
    }

private:
    [[nodiscard]] std::size_t index(int site, int h, int t) const {
        if (site < 0 || site >= sites_ || h < 0 || h >= ries_ || t < 0 || t >= horizon_)
            throw ShapeError("ChannelArray: index out of range");
        return (static_cast<std::size_t>(site) * ries_ + h) * horizon_ + t;
    }

    int sites_ = 0;
    int ries_ = 0;
    int horizon_ = 0;
    std::vector<double> data_;
};

/// Largest absolute elementwise difference between two same-shaped arrays.
double max_abs_gap(const ChannelArray& a, const ChannelArray& b);

/// Multipliers and intermediate powers carried between consensus iterations.
/// Gas-side arrays are shaped (gas nodes, ries, T); electric-side arrays are
/// shaped (buses, ries, T).
struct ConsensusState {
    ChannelArray lambda_gn;   // on transmitted gas
    ChannelArray lambda_en;   // on transmitted electricity
    ChannelArray lambda_ehg;  // on received gas
    ChannelArray lambda_ehe;  // on received electricity
    ChannelArray ip_gas;
    ChannelArray ip_elec;
};

struct AdmmConfig {
    double rho_gn = 100.0;
    double rho_en = 100.0;
    double rho_ehg = 100.0;
    double rho_ehe = 100.0;
    double eps_gas = 1e-3;
    double eps_elec = 1e-3;
    int max_iters = 200;
    int quad_knots = 8;  // knots per half-axis of the penalty linearization

    // Early stop when the best residual has not improved by more than
    // stall_tol over stall_window consecutive iterations.
    int stall_window = 20;
    double stall_tol = 1e-9;

    bool parallel_solves = true;
    milp::SolverConfig solver;

    void validate() const;
};

}  // namespace triplan
