#include <benchmark/benchmark.h>

#include <random>

#include "triplan/milp/solve.hpp"

namespace {

using namespace triplan::milp;

// Seeded random LP/MIP instances; feasibility is guaranteed by bounding every
// variable and using <= rows with slack-positive right-hand sides.
Model random_model(std::uint64_t seed, int n_vars, int n_rows, int n_binaries) {
    std::mt19937_64 rng(seed);
    auto uni = [&](double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    };
    Model m;
    std::vector<VarId> vars;
    for (int j = 0; j < n_vars; ++j)
        vars.push_back(m.add_variable(j < n_binaries ? VarKind::binary : VarKind::continuous, 0.0,
                                      j < n_binaries ? 1.0 : uni(1.0, 10.0)));
    LinearExpression obj;
    for (const auto v : vars) obj.add(v, uni(-1.0, 1.0));
    m.set_objective(std::move(obj));
    for (int i = 0; i < n_rows; ++i) {
        LinearExpression row;
        for (const auto v : vars)
            if (uni(0.0, 1.0) < 0.4) row.add(v, uni(-1.0, 1.0));
        m.add_le(std::move(row), uni(1.0, 8.0));
    }
    return m;
}

void BM_SolveLp(benchmark::State& state) {
    const Model m = random_model(7, static_cast<int>(state.range(0)),
                                 static_cast<int>(state.range(0)) * 2, 0);
    for (auto _ : state) benchmark::DoNotOptimize(solve_lp(m));
}
BENCHMARK(BM_SolveLp)->Arg(20)->Arg(60)->Arg(120);

void BM_SolveMip(benchmark::State& state) {
    const Model m = random_model(11, 30, 40, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(solve_mip(m));
}
BENCHMARK(BM_SolveMip)->Arg(6)->Arg(10)->Arg(14);

}  // namespace
