#pragma once

#include "homlab/core.hpp"
#include "homlab/power.hpp"

namespace homlab {

/// A structure with two marked elements. Mapping it into a target and
/// reading off the marks defines a binary relation on the target.
struct Gadget {
    Structure structure;
    std::string x;
    std::string y;
};

/// {(h(x), h(y)) : h a homomorphism from the gadget into a}.
std::set<std::pair<std::string, std::string>> pp_relation(const Gadget& g, const Structure& a,
                                                          long long budget = 1000000);

/// True when the defined relation is exactly inequality on a's universe.
bool defines_clique(const Gadget& g, const Structure& a, long long budget = 1000000);

/// Certifies a coloring of a's tolerant power as a coloring of the complete
/// graph's tolerant power over the same filter. For each pair of functions
/// differing on a filter set, the verdict needs distinct colors, and the
/// per-pair witness map (gadget into the carrier, built from pinned gadget
/// homomorphisms coordinate by coordinate) shows why the pair forces this.
struct LiftPairWitness {
    std::string f;
    std::string g;
    std::vector<int> difference_set;
    bool difference_in_filter = false;
    std::map<std::string, std::string> psi_assignment;
    bool psi_valid = false;
    bool properly_colored = false;
};
struct LiftReport {
    bool verdict = false;
    std::vector<LiftPairWitness> pairs;
    std::optional<std::pair<std::string, std::string>> violating_pair;
};
LiftReport lift_hom(const Gadget& g, const Structure& a, const TolerantPower& pa,
                    const Homomorphism& phi, long long budget = 1000000);

/// Outcomes of the four family checks run during extraction. All four hold
/// for any genuine coloring; a failure raises ExtractionFailure instead of
/// returning.
struct ExtractionChecks {
    bool contains_filter = false;
    bool complement_dichotomy = false;
    bool upward_closure = false;
    bool intersection_closure = false;
};

/// Witness that a coloring of a complete-graph tolerant power is evaluation
/// at a point: the color permutation that renormalizes constants, the
/// extracted ultrafilter, and the check outcomes.
struct ExtractionWitness {
    std::vector<int> normalization;  // color position -> renamed position
    FiniteFilter extracted;
    ExtractionChecks checks;
};

/// Reads the ultrafilter {X : phi(indicator of X) = 1} off a coloring of a
/// complete-graph power (at least three colors), after renaming colors so
/// that constants map to their own value. Colorings that are not injective
/// on constants are rejected as InvalidHomomorphism.
ExtractionWitness extract_ultrafilter(const TolerantPower& p, const Homomorphism& phi);

}  // namespace homlab
