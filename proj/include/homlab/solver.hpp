#pragma once

#include "homlab/core.hpp"

namespace homlab {

/// Candidate targets per source element, in target universe order. States
/// returned by arc_consistency are greatest fixpoints: rerunning the
/// propagator leaves them unchanged.
struct DomainState {
    std::map<std::string, std::vector<std::string>> domains;
    bool operator==(const DomainState&) const = default;
};

/// Tuple-directed propagation to the greatest fixpoint: a value survives in
/// dom(x) only if every source tuple through x extends to a target tuple
/// with all coordinates in the current domains.
DomainState arc_consistency(const Structure& b, const Structure& a);

/// Same propagator started from an explicit state instead of full domains.
DomainState arc_consistency_refine(const Structure& b, const Structure& a,
                                   const DomainState& start);

/// Propagation plus backtracking. Value order is target universe order;
/// variable order picks the smallest remaining domain, ties broken by source
/// universe order. `pins` force singleton domains up front.
std::optional<Homomorphism> hom_exists(const Structure& b, const Structure& a,
                                       const std::map<std::string, std::string>& pins = {});

struct Enumeration {
    std::vector<Homomorphism> homomorphisms;
    bool truncated = false;  // set when the limit cut the enumeration short
};

/// All homomorphisms in lexicographic order of assignments (source universe
/// order for variables, target universe order for values), truncated at
/// `limit`.
Enumeration hom_enumerate(const Structure& b, const Structure& a, long long limit);

}  // namespace homlab
