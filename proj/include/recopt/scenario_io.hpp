#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "recopt/domain.hpp"

namespace recopt {

// Scenario files are JSON; the schema lives in docs/scenario_format.md.
// write_scenario() emits the canonical form: fixed key order, one entity per
// block, series on one line, shortest round-trip number formatting.

// Throws Error(ParseError) with line/column or field context, or the
// validation error raised by validate_scenario.
ValidatedScenario parse_scenario(std::string_view text, std::string_view source = "<memory>");
ValidatedScenario load_scenario(const std::filesystem::path& path);

std::string write_scenario(const ValidatedScenario& scenario);
void save_scenario(const std::filesystem::path& path, const ValidatedScenario& scenario);

}  // namespace recopt
