#pragma once

#include "homlab/core.hpp"
#include "homlab/filters.hpp"

namespace homlab {

/// The tolerant power of a structure over a filter: elements are all
/// functions from the index set into the base universe, and a tuple of
/// functions is related exactly when its coordinatewise agreement set
/// belongs to the filter. Element ids are the comma-joined values in index
/// order; `element_digits` keeps the decoded form (base universe positions)
/// so ids never need re-parsing.
struct TolerantPower {
    Structure base_structure;
    FiniteFilter filter;
    Structure carrier;
    std::vector<std::vector<int>> element_digits;

    int carrier_position(const std::string& id) const;       // -1 if absent
    const std::vector<int>& digits_of(const std::string& id) const;
    std::string id_for_digits(const std::vector<int>& digits) const;
};

/// Budget bounds both the carrier universe and each relation's tuple count;
/// either overflow raises BudgetExceeded before allocation.
TolerantPower tolerant_power(const Structure& a, const FiniteFilter& f,
                             long long budget = 100000);

/// Indices where the tuple's coordinates are related in the base structure.
std::vector<int> agreement_set(const TolerantPower& p, const std::string& symbol,
                               const std::vector<std::string>& tuple);

/// Membership by the defining law (agreement set in the filter), independent
/// of the stored carrier relation.
bool power_tuple_related(const TolerantPower& p, const std::string& symbol,
                         const std::vector<std::string>& tuple);

/// Functions agree modulo the filter exactly when they agree on its base,
/// so classes are fibers of restriction-to-base. Representatives are the
/// carrier-order-least members; the quotient universe lists them in that
/// order.
struct AgreementQuotient {
    TolerantPower power;
    std::vector<std::vector<std::string>> classes;
    Structure quotient;
    Homomorphism projection;  // carrier -> quotient
};
AgreementQuotient quotient_by_agreement(const TolerantPower& p);

/// Evaluation at the principal index of an ultrafilter extending the power's
/// filter. Throws NotUltrafilter / NotContaining.
Homomorphism ultrafilter_hom(const TolerantPower& p, const FiniteFilter& u);

/// The element taking value 1 on the subset and 0 elsewhere (positions in
/// the base universe order; the base structure needs at least two elements).
struct CharacteristicFunction {
    std::vector<int> subset;
    std::string element_id;
};
CharacteristicFunction characteristic_function(const TolerantPower& p,
                                               const std::vector<int>& subset);

/// Constant function at the given base-universe position.
std::string constant_element(const TolerantPower& p, int value_position);

/// The compactness-direction embedding: index set I = all maps from the
/// source universe into the target (lexicographic order), the filter is
/// generated by the satisfaction sets of the source tuples, and psi sends x
/// to the function i -> i(x). The power carrier is never materialized; the
/// embedding's target is the substructure induced on psi's image.
/// ImproperFilter signals that the generators have empty intersection,
/// which at this scale happens exactly when no homomorphism exists.
struct CanonicalEmbedding {
    Structure source;
    Structure target;
    FiniteFilter filter;
    std::vector<std::vector<int>> index_maps;  // i -> target positions over source order
    Structure image;
    Homomorphism psi;  // source -> image
};
CanonicalEmbedding canonical_embedding(const Structure& b, const Structure& a,
                                       long long budget = 100000);

/// Composes psi with evaluation at the principal index of an ultrafilter
/// extending the embedding filter, yielding a source -> target homomorphism.
Homomorphism embedding_round_trip(const CanonicalEmbedding& e, const FiniteFilter& u);

/// Evaluation on a finite piece of the carrier: the common support is the
/// intersection of the piece's agreement sets, and the map evaluates every
/// element at the least supported index.
struct Evaluation {
    std::vector<int> support;
    Homomorphism hom;  // induced substructure -> base structure
};
Evaluation evaluation_hom(const TolerantPower& p, const std::set<std::string>& elements);

/// Pushes a carrier coloring through the agreement quotient: each class maps
/// to the least base element attained on it.
Homomorphism push_hom_to_quotient(const AgreementQuotient& q, const Homomorphism& phi);

/// Checks that relation membership in the stored carrier is invariant under
/// substituting agreement-equivalent elements coordinatewise. Exhaustive up
/// to `exhaustive_limit` substitutions, deterministically sampled above it.
bool lex_sum_check(const TolerantPower& p, long long exhaustive_limit = 10000);

}  // namespace homlab
