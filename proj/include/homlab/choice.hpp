#pragma once

#include <set>
#include <vector>

#include "homlab/errors.hpp"

namespace homlab {

/// A permutation group on {0..degree-1}: the element list contains the
/// identity, is closed under composition and inverse, and is sorted
/// lexicographically.
struct PermGroup {
    int degree = 0;
    std::vector<std::vector<int>> elements;
};

/// All subgroups of the symmetric group on {0..m-1}, found by breadth-first
/// closure over one added generator at a time, deduplicated by element set
/// and sorted by (order, element list). Degrees above max_degree raise
/// BudgetExceeded; 6 is the hard cap (the closure sweep crawls there).
std::vector<PermGroup> subgroups(int m, int max_degree = 5);

/// True when no point is fixed by every element of the group.
bool fixed_point_free(const PermGroup& g);

/// Group-theoretic dependency criterion: every fixed-point-free subgroup G
/// of the symmetric group on m points must contain a fixed-point-free
/// subgroup H admitting proper subgroups H_1..H_k (k at least 1, repetition
/// allowed) with [H:H_1] + ... + [H:H_k] in s. Index sums are explored up
/// to max(s); every index is at least 2, so the search is finite.
bool gauntt_condition(int m, const std::set<int>& s,
                      const std::vector<PermGroup>& all_subgroups);
bool gauntt_condition(int m, const std::set<int>& s, int max_degree = 5);

/// True when every multiset of primes summing to m contains a prime at most
/// n, decided by enumerating the partitions into primes above n.
bool prime_sum_criterion(int m, int n);

}  // namespace homlab
