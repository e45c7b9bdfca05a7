#pragma once

#include <cstdint>

#include "triplan/caseio/case.hpp"

namespace triplan::caseio {

enum class Scale { tiny, desk };

/// Deterministic synthetic case generator. Identical (seed, scale) pairs
/// produce identical cases, byte for byte once serialized. Capacities are
/// sized from the drawn loads with explicit margins so every generated case
/// is feasible for joint planning. The desk scale carries three districts
/// with the three load archetypes (no cold, no heat, mixed); tiny carries one.
PlanningCase synth_case(std::uint64_t seed, Scale scale);

}  // namespace triplan::caseio
