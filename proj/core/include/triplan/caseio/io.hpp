#pragma once

#include <filesystem>
#include <string>

#include "triplan/caseio/case.hpp"

namespace triplan::caseio {

/// Parses and fully resolves a case file. Throws CaseError with the offending
/// location on missing fields, dangling node/bus references, or non-positive
/// reactance.
PlanningCase load_case(const std::filesystem::path& path);
PlanningCase parse_case(const std::string& json_text);

/// Serializes the case in the documented JSON schema. save_case followed by
/// load_case reproduces the case exactly.
std::string case_to_json(const PlanningCase& c);
void save_case(const PlanningCase& c, const std::filesystem::path& path);

}  // namespace triplan::caseio
