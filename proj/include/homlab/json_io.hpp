#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "homlab/core.hpp"

namespace homlab {

/// Structure file format:
///   {"universe": ["0","1"],
///    "relations": {"E": {"arity": 2, "tuples": [["0","1"],["1","0"]]}}}
/// The signature is derived from the relations block (symbols sorted by
/// name). Unknown fields are rejected, as are invariant violations.
Structure structure_from_json(const nlohmann::json& j);
nlohmann::json structure_to_json(const Structure& s);

Structure load_structure(const std::string& path);
void save_structure(const Structure& s, const std::string& path);

/// Homomorphism file format: {"assignment": {"elem": "image", ...}}.
/// Source and target come from context, so only the assignment is stored.
std::map<std::string, std::string> assignment_from_json(const nlohmann::json& j);
nlohmann::json assignment_to_json(const std::map<std::string, std::string>& assignment);
std::map<std::string, std::string> load_assignment(const std::string& path);

}  // namespace homlab
