#include <benchmark/benchmark.h>

#include "triplan/caseio/synth.hpp"
#include "triplan/coord/admm.hpp"
#include "triplan/coord/joint.hpp"

namespace {

void BM_JointTiny(benchmark::State& state) {
    const auto c = triplan::caseio::synth_case(1, triplan::caseio::Scale::tiny);
    for (auto _ : state) benchmark::DoNotOptimize(triplan::coord::solve_joint(c));
}
BENCHMARK(BM_JointTiny)->Unit(benchmark::kMillisecond);

void BM_AdmmTiny(benchmark::State& state) {
    const auto c = triplan::caseio::synth_case(1, triplan::caseio::Scale::tiny);
    triplan::AdmmConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(triplan::coord::admm_run(c, cfg));
}
BENCHMARK(BM_AdmmTiny)->Unit(benchmark::kMillisecond);

}  // namespace
