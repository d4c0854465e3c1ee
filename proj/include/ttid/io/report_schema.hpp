#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace ttid {

// Structural checks of the JSON documents written by the library and CLI.
// Returns the list of problems (empty when valid).
enum class ReportKind { Tree, Classification, Index, Vivas, Chardirs, Log, Orbit, Error };

std::vector<std::string> validate_report(const nlohmann::json& j, ReportKind kind);
// Detects the kind from the "report" key; "reports" and "files" wrappers are
// validated element by element.
std::vector<std::string> validate_report(const nlohmann::json& j);

// Syntax of the DOT subset written by to_dot.
std::vector<std::string> validate_dot(const std::string& text);

}  // namespace ttid
