#pragma once

#include <vector>

#include "homlab/errors.hpp"

namespace homlab {

/// A finite index set {0, ..., size-1}.
struct IndexSet {
    int size = 0;
    bool operator==(const IndexSet&) const = default;
};

/// A proper filter on a finite index set. Every such filter is principal, so
/// it is normalized to its base: a subset X is a member exactly when it
/// contains the base. Subsets are sorted index vectors throughout.
struct FiniteFilter {
    IndexSet index_set;
    std::vector<int> base;
    bool operator==(const FiniteFilter&) const = default;
};

/// Validating constructor: base must be a nonempty sorted subset of the
/// index set (unsorted input is sorted; duplicates rejected).
FiniteFilter filter_from_base(IndexSet index_set, std::vector<int> base);

/// Smallest filter containing the generators: base = intersection of all of
/// them. Throws ImproperFilter when the intersection is empty.
FiniteFilter filter_from_generators(IndexSet index_set,
                                    const std::vector<std::vector<int>>& generators);

bool filter_membership(const FiniteFilter& f, const std::vector<int>& subset);

/// True exactly when the base is a singleton. On index sets of size at most
/// six this is cross-checked against the complementary-pair characterization
/// (exactly one of X, complement(X) is a member, for every X).
bool is_ultrafilter(const FiniteFilter& f);

/// All ultrafilters containing f: one per base element, principal at that
/// element, ordered by index.
std::vector<FiniteFilter> extend_to_ultrafilter(const FiniteFilter& f);

// Subset helpers shared by the power-construction modules.
bool subset_contains(const std::vector<int>& outer, const std::vector<int>& inner);
std::vector<int> subset_intersection(const std::vector<int>& a, const std::vector<int>& b);
std::vector<int> subset_complement(const IndexSet& index_set, const std::vector<int>& a);
std::vector<int> full_index_subset(const IndexSet& index_set);

}  // namespace homlab
