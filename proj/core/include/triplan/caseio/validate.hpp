#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "triplan/caseio/case.hpp"

namespace triplan::caseio {

enum class Severity { error, warning };

struct Finding {
    Severity severity = Severity::error;
    std::string location;
    std::string message;
};

struct ValidationReport {
    std::vector<Finding> findings;

    [[nodiscard]] bool clean() const noexcept { return findings.empty(); }
    [[nodiscard]] bool has_errors() const noexcept;
    void add(Severity s, std::string location, std::string message);
    void print(std::ostream& out) const;
};

/// Checks every case invariant (bounds ordering, positivity, efficiency
/// ranges, hub column patterns, series lengths, reference resolution).
/// An empty report means the case is well formed.
ValidationReport validate_case(const PlanningCase& c);

}  // namespace triplan::caseio
