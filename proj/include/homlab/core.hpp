#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "homlab/errors.hpp"

namespace homlab {

/// A relational signature: named symbols with fixed arities, in declaration
/// order. Names are distinct, arities are at least one.
struct Signature {
    std::vector<std::pair<std::string, int>> symbols;

    bool operator==(const Signature&) const = default;

    bool has_symbol(const std::string& name) const;
    int arity_of(const std::string& name) const;  // throws UnknownSymbol
};

/// A finite relational structure. Element ids are strings; the universe's
/// declaration order is the canonical order used by every operation that
/// needs one. Relations are stored as sorted tuple sets, so iteration order
/// is deterministic.
struct Structure {
    Signature signature;
    std::vector<std::string> universe;
    std::map<std::string, std::set<std::vector<std::string>>> relations;

    bool operator==(const Structure&) const = default;

    // Position in the universe, -1 if absent. Linear scan; hot paths build
    // their own index.
    int position(const std::string& id) const;
};

/// A map between structures over the same signature. Plain data: validity is
/// checked by homomorphism_violations, not enforced by construction, so test
/// fixtures can build deliberately broken maps.
struct Homomorphism {
    Structure source;
    Structure target;
    std::map<std::string, std::string> assignment;
};

/// Invariant check. Violations are data, not exceptions: each entry names the
/// offending tuple or element.
std::vector<std::string> structure_violations(const Structure& s);

/// Checks signature match, totality, and tuple preservation.
std::vector<std::string> homomorphism_violations(const Homomorphism& h);
bool is_homomorphism(const Homomorphism& h);

/// Builds a homomorphism and throws InvalidHomomorphism if it does not
/// validate. Operations whose outputs are theorem-backed route through this.
Homomorphism checked_homomorphism(Structure source, Structure target,
                                  std::map<std::string, std::string> assignment);

/// Substructure induced on a nonempty subset of the universe, keeping the
/// ambient universe order.
Structure induced_substructure(const Structure& s, const std::set<std::string>& subset);

/// Categorical product. Element ids are "(a,b)"; a tuple of pairs is related
/// exactly when both coordinate tuples are.
Structure product(const Structure& s1, const Structure& s2);

/// Same universe, one binary relation: (u,v) related iff there is a walk of
/// length exactly `length` from u to v along `symbol`.
Structure reachability_power(const Structure& s, const std::string& symbol, int length);

/// Components of the symmetrized union of all relations (entries sharing a
/// tuple are linked). Blocks and their members follow universe order.
std::vector<std::vector<std::string>> connected_components(const Structure& s);

/// Bijective homomorphism whose inverse is also one, or nullopt. The witness
/// returned is the forward map; both directions are validated internally.
std::optional<Homomorphism> find_isomorphism(const Structure& s1, const Structure& s2,
                                             int budget = 30);

// Builders shared across modules. Universes are "0".."n-1"; the binary
// symbol is "E".
Structure complete_graph(int n);       // adjacency = inequality
Structure undirected_cycle(int n);     // edges both directions
Structure undirected_path(int edges);  // path with `edges` edges
Structure single_loop();               // one element, one looped tuple

}  // namespace homlab
