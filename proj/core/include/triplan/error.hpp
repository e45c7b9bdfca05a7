#pragma once

#include <stdexcept>
#include <string>

namespace triplan {

/// Base class for all triplan errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Variable bounds are inverted, non-finite, or out of range for the kind.
struct BoundsError : Error {
    explicit BoundsError(const std::string& what) : Error(what) {}
};

/// Numerical breakdown inside a solver (tiny pivot, iteration runaway).
/// Raised instead of returning a possibly wrong answer.
struct ConditioningError : Error {
    explicit ConditioningError(const std::string& what) : Error(what) {}
};

/// Case file could not be parsed or resolved.
struct CaseError : Error {
    explicit CaseError(const std::string& what) : Error(what) {}
};

/// Array shapes disagree (consensus state vs. case dimensions).
struct ShapeError : Error {
    explicit ShapeError(const std::string& what) : Error(what) {}
};

}  // namespace triplan
