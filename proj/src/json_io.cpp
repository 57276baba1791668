#include "homlab/json_io.hpp"

#include <fstream>

namespace homlab {

namespace {

void reject_unknown_fields(const nlohmann::json& j, const std::set<std::string>& allowed,
                           const std::string& where) {
    for (const auto& [key, value] : j.items())
        if (!allowed.count(key))
            fail(errc::parse_error, where + ": unknown field \"" + key + "\"");
}

}  // namespace

Structure structure_from_json(const nlohmann::json& j) {
    if (!j.is_object()) fail(errc::parse_error, "structure: expected an object");
    reject_unknown_fields(j, {"universe", "relations"}, "structure");
    if (!j.contains("universe") || !j.contains("relations"))
        fail(errc::parse_error, "structure: need \"universe\" and \"relations\"");
    if (!j["universe"].is_array()) fail(errc::parse_error, "universe: expected an array");
    if (!j["relations"].is_object()) fail(errc::parse_error, "relations: expected an object");

    Structure s;
    for (const auto& e : j["universe"]) {
        if (!e.is_string()) fail(errc::parse_error, "universe: elements must be strings");
        s.universe.push_back(e.get<std::string>());
    }

    // nlohmann object iteration is ordered by key, so the derived signature
    // lists symbols sorted by name.
    for (const auto& [name, body] : j["relations"].items()) {
        if (!body.is_object()) fail(errc::parse_error, "relation " + name + ": expected an object");
        reject_unknown_fields(body, {"arity", "tuples"}, "relation " + name);
        if (!body.contains("arity") || !body.contains("tuples"))
            fail(errc::parse_error, "relation " + name + ": need \"arity\" and \"tuples\"");
        if (!body["arity"].is_number_integer())
            fail(errc::parse_error, "relation " + name + ": arity must be an integer");
        const int arity = body["arity"].get<int>();
        s.signature.symbols.push_back({name, arity});

        auto& dst = s.relations[name];
        if (!body["tuples"].is_array())
            fail(errc::parse_error, "relation " + name + ": tuples must be an array");
        for (const auto& t : body["tuples"]) {
            if (!t.is_array()) fail(errc::parse_error, "relation " + name + ": each tuple must be an array");
            std::vector<std::string> tuple;
            for (const auto& e : t) {
                if (!e.is_string())
                    fail(errc::parse_error, "relation " + name + ": tuple entries must be strings");
                tuple.push_back(e.get<std::string>());
            }
            dst.insert(std::move(tuple));
        }
    }

    auto violations = structure_violations(s);
    if (!violations.empty()) fail(errc::parse_error, violations.front());
    return s;
}

nlohmann::json structure_to_json(const Structure& s) {
    nlohmann::json j;
    j["universe"] = s.universe;
    auto& rels = j["relations"] = nlohmann::json::object();
    for (const auto& [name, arity] : s.signature.symbols) {
        nlohmann::json body;
        body["arity"] = arity;
        auto& tuples = body["tuples"] = nlohmann::json::array();
        auto it = s.relations.find(name);
        if (it != s.relations.end())
            for (const auto& t : it->second) tuples.push_back(t);
        rels[name] = std::move(body);
    }
    return j;
}

Structure load_structure(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::parse_error, "cannot open \"" + path + "\"");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        fail(errc::parse_error, path + ": " + e.what());
    }
    return structure_from_json(j);
}

void save_structure(const Structure& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) fail(errc::parse_error, "cannot write \"" + path + "\"");
    out << structure_to_json(s).dump(2) << "\n";
}

std::map<std::string, std::string> assignment_from_json(const nlohmann::json& j) {
    if (!j.is_object()) fail(errc::parse_error, "homomorphism: expected an object");
    reject_unknown_fields(j, {"assignment"}, "homomorphism");
    if (!j.contains("assignment") || !j["assignment"].is_object())
        fail(errc::parse_error, "homomorphism: need an \"assignment\" object");
    std::map<std::string, std::string> out;
    for (const auto& [key, value] : j["assignment"].items()) {
        if (!value.is_string()) fail(errc::parse_error, "assignment: images must be strings");
        out[key] = value.get<std::string>();
    }
    return out;
}

nlohmann::json assignment_to_json(const std::map<std::string, std::string>& assignment) {
    nlohmann::json j;
    j["assignment"] = assignment;
    return j;
}

std::map<std::string, std::string> load_assignment(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::parse_error, "cannot open \"" + path + "\"");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        fail(errc::parse_error, path + ": " + e.what());
    }
    return assignment_from_json(j);
}

}  // namespace homlab
