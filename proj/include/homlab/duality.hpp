#pragma once

#include "homlab/core.hpp"
#include "homlab/power.hpp"

namespace homlab {

/// The power-set structure over a base: elements are the nonempty subsets of
/// the base universe (ids like "{0,2}", members in universe order), and a
/// tuple of subsets is related when the base relation restricted to their
/// product projects onto every coordinate.
struct PowerSetStructure {
    Structure base;
    Structure derived;
};
PowerSetStructure power_set_structure(const Structure& a, int budget = 12);

std::string subset_id(const Structure& base, const std::vector<int>& positions);

/// A structure has width one exactly when its power-set structure maps
/// homomorphically back to it. The witness doubles as the consistency-
/// collapsing map used everywhere a width-one target appears.
struct WidthOneVerdict {
    bool width_one = false;
    std::optional<Homomorphism> witness;
};
WidthOneVerdict width_one(const Structure& a, int budget = 12);

/// Maps each power element to the inclusion-least subset whose preimage is a
/// filter member. Computed from that definition (scan all subsets); the
/// image-of-the-base shortcut is only a cross-check in the tests.
Homomorphism minimal_support_map(const TolerantPower& p, int budget = 12);

}  // namespace homlab
