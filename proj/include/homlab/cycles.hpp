#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "homlab/core.hpp"
#include "homlab/filters.hpp"
#include "homlab/power.hpp"

namespace homlab {

/// The directed n-cycle: universe "0".."n-1", one binary symbol "R" holding
/// exactly the tuples (i, i+1 mod n).
struct DirectedCycle {
    int n = 0;
    Structure structure;
};
DirectedCycle directed_cycle(int n);  // BadN below 2

/// The Chinese remainder isomorphism k -> (k mod p, k mod q) from the
/// pq-cycle onto the product of the p-cycle and the q-cycle. Validated in
/// both directions before returning the forward map. NotCoprime when
/// gcd(p, q) > 1, BadN when either factor is below 2.
Homomorphism crt_isomorphism(int p, int q);

/// Collapses a coloring of a kp-cycle power into a coloring of the p-cycle
/// power over the same filter: psi(f) is the unique j with phi(kf) in
/// {kj, ..., kj+k-1}, where kf multiplies every coordinate by k.
Homomorphism divisor_transfer(const TolerantPower& big, const Homomorphism& phi,
                              int k, int p, long long budget = 100000);

/// Census of the agreement quotient of a directed-cycle power. The quotient
/// splits into n^(|base|-1) components, each isomorphic to the n-cycle; any
/// departure raises CensusFailure.
struct ComponentCensus {
    long long count = 0;
    std::vector<std::vector<std::string>> components;
    std::vector<Homomorphism> witnesses;  // per-component maps onto the cycle
};
ComponentCensus component_census(const AgreementQuotient& q);

/// Index set of all partial choice functions on a family of disjoint p-sets.
/// choices[i][t] is 0 when set t is outside the domain of function i, and d
/// in 1..p when the function picks family[t][d-1]. The filter is generated
/// by the sets "t lies in the domain"; its base is the total functions.
struct ChoiceInstance {
    std::vector<std::vector<std::string>> family;
    int p = 0;
    IndexSet index_set;
    std::vector<std::vector<int>> choices;
    FiniteFilter filter;
};
ChoiceInstance choice_filter(const std::vector<std::vector<std::string>>& family,
                             long long budget = 100000);

/// A coloring of the p-cycle power over a choice instance, taken by digits
/// and returning the colored cycle position. Keeping it a function lets
/// carriers too large to materialize still be colored.
using PowerColoring = std::function<int(const std::vector<int>&)>;

/// Runs the bijection-class argument on every set x of the family: each
/// class {psi, psi+1, ..., psi+p-1} of bijections x -> Z_p forms a copy of
/// the p-cycle inside the power, so the coloring sends exactly one member to
/// 0, and that member's preimage of 0 is the element the class
/// distinguishes. y_x collects the most-distinguished elements; it is a
/// nonempty proper subset of x because p never divides (p-1)!, so any
/// violation raises ExtractionFailure.
struct DistinguishedSubsets {
    std::vector<std::vector<std::string>> subsets;
    std::vector<std::map<std::string, int>> counts;
};
DistinguishedSubsets distinguished_subset(const ChoiceInstance& inst,
                                          const PowerColoring& phi);
DistinguishedSubsets distinguished_subset(const ChoiceInstance& inst,
                                          const Homomorphism& phi,
                                          long long budget = 100000);

/// The two-element structure ({0,1}; leq, neq).
Structure order_two_structure();

/// Colors the agreement quotient of the ({0,1}; leq, neq) power over the
/// filter. The quotient's leq is a partial order; a deterministic
/// topological sort extends it to a linear order, and a class is colored 0
/// exactly when it precedes its complement class. The coloring validates
/// for both relations.
struct OrderExtension {
    AgreementQuotient quotient;
    std::vector<std::string> linear_order;  // class representatives, least first
    Homomorphism hom;                       // quotient -> order_two_structure()
};
OrderExtension order_structure_hom(const FiniteFilter& f, long long budget = 100000);

}  // namespace homlab
