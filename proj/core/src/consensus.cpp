#include "triplan/consensus.hpp"

#include <algorithm>
#include <cmath>

namespace triplan {

double max_abs_gap(const ChannelArray& a, const ChannelArray& b) {
    if (!a.same_shape(b)) throw ShapeError("max_abs_gap: shape mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        worst = std::max(worst, std::fabs(a.data()[i] - b.data()[i]));
    return worst;
}

void AdmmConfig::validate() const {
    if (!(rho_gn > 0.0) || !(rho_en > 0.0) || !(rho_ehg > 0.0) || !(rho_ehe > 0.0))
        throw Error("admm config: penalty parameters must be positive");
    if (!(eps_gas > 0.0) || !(eps_elec > 0.0))
        throw Error("admm config: convergence thresholds must be positive");
    if (max_iters < 1) throw Error("admm config: max_iters must be at least 1");
    if (quad_knots < 1) throw Error("admm config: quad_knots must be at least 1");
}

}  // namespace triplan
