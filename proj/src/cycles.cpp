#include "homlab/cycles.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace homlab {
namespace {

long long checked_pow_ll(long long base, int exp, long long cap) {
    long long r = 1;
    for (int i = 0; i < exp; ++i) {
        if (r > cap / base) return cap + 1;
        r *= base;
    }
    return r;
}

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

}  // namespace

DirectedCycle directed_cycle(int n) {
    if (n < 2) fail(errc::bad_n, "cycle length must be at least 2");
    Structure s;
    s.signature.symbols = {{"R", 2}};
    auto& tuples = s.relations["R"];
    for (int i = 0; i < n; ++i) {
        s.universe.push_back(std::to_string(i));
        tuples.insert({std::to_string(i), std::to_string((i + 1) % n)});
    }
    return DirectedCycle{n, std::move(s)};
}

Homomorphism crt_isomorphism(int p, int q) {
    if (p < 2 || q < 2) fail(errc::bad_n, "both factors must be at least 2");
    if (std::gcd(p, q) != 1) fail(errc::not_coprime, "factors share a divisor");

    const Structure big = directed_cycle(p * q).structure;
    const Structure prod = product(directed_cycle(p).structure, directed_cycle(q).structure);

    std::map<std::string, std::string> forward, backward;
    for (int k = 0; k < p * q; ++k) {
        const std::string image =
            "(" + std::to_string(k % p) + "," + std::to_string(k % q) + ")";
        forward[std::to_string(k)] = image;
        backward[image] = std::to_string(k);
    }

    Homomorphism hom{big, prod, forward};
    Homomorphism inv{prod, big, backward};
    if (backward.size() != forward.size() || !is_homomorphism(hom) || !is_homomorphism(inv))
        fail(errc::validation_failure, "remainder map failed to validate as an isomorphism");
    return hom;
}

Homomorphism divisor_transfer(const TolerantPower& big, const Homomorphism& phi,
                              int k, int p, long long budget) {
    if (k < 2 || p < 2) fail(errc::bad_n, "divisor and quotient length must be at least 2");
    const int kp = k * p;
    if (big.base_structure != directed_cycle(kp).structure)
        fail(errc::signature_mismatch, "power base is not the directed cycle of length k*p");
    if (phi.source != big.carrier || phi.target != big.base_structure ||
        !is_homomorphism(phi))
        fail(errc::invalid_homomorphism, "input is not a coloring of the given power");

    const TolerantPower small =
        tolerant_power(directed_cycle(p).structure, big.filter, budget);

    std::map<std::string, std::string> assignment;
    for (const auto& id : small.carrier.universe) {
        std::vector<int> scaled = small.digits_of(id);
        for (int& d : scaled) d = k * d % kp;
        const int value = std::stoi(phi.assignment.at(big.id_for_digits(scaled)));
        assignment[id] = std::to_string(value / k);
    }

    Homomorphism psi{small.carrier, directed_cycle(p).structure, std::move(assignment)};
    if (!is_homomorphism(psi))
        fail(errc::validation_failure, "transferred coloring failed to validate");
    return psi;
}

ComponentCensus component_census(const AgreementQuotient& q) {
    const int n = static_cast<int>(q.power.base_structure.universe.size());
    if (n < 2 || q.power.base_structure != directed_cycle(n).structure)
        fail(errc::signature_mismatch, "power base is not a directed cycle");
    const Structure cycle = directed_cycle(n).structure;

    ComponentCensus census;
    census.components = connected_components(q.quotient);
    census.count = static_cast<long long>(census.components.size());

    const int base_size = static_cast<int>(q.power.filter.base.size());
    long long expected = 1;
    for (int i = 1; i < base_size; ++i) expected *= n;
    if (census.count != expected)
        fail(errc::census_failure, "expected " + std::to_string(expected) +
                                       " components, found " + std::to_string(census.count));

    for (const auto& members : census.components) {
        const Structure part = induced_substructure(
            q.quotient, std::set<std::string>(members.begin(), members.end()));
        auto iso = find_isomorphism(part, cycle);
        if (!iso)
            fail(errc::census_failure, "component is not isomorphic to the cycle");
        census.witnesses.push_back(std::move(*iso));
    }
    return census;
}

ChoiceInstance choice_filter(const std::vector<std::vector<std::string>>& family,
                             long long budget) {
    if (family.empty()) fail(errc::empty_subset, "at least one set required");
    const int p = static_cast<int>(family.front().size());
    if (p < 1) fail(errc::empty_subset, "sets must be nonempty");
    std::set<std::string> all;
    for (const auto& x : family) {
        if (static_cast<int>(x.size()) != p)
            fail(errc::parse_error, "sets must share one size");
        all.insert(x.begin(), x.end());
    }
    if (all.size() != family.size() * static_cast<size_t>(p))
        fail(errc::parse_error, "sets must be disjoint with distinct elements");

    const int sets = static_cast<int>(family.size());
    const long long size = checked_pow_ll(p + 1, sets, budget);
    if (size > budget)
        fail(errc::budget_exceeded, "partial choice function count exceeds budget");

    // mixed-radix enumeration, first set most significant
    std::vector<std::vector<int>> choices(size, std::vector<int>(sets, 0));
    for (long long i = 0; i < size; ++i) {
        long long rest = i;
        for (int t = sets - 1; t >= 0; --t) {
            choices[i][t] = static_cast<int>(rest % (p + 1));
            rest /= p + 1;
        }
    }

    std::vector<std::vector<int>> generators(sets);
    for (long long i = 0; i < size; ++i)
        for (int t = 0; t < sets; ++t)
            if (choices[i][t] > 0) generators[t].push_back(static_cast<int>(i));

    const IndexSet index_set{static_cast<int>(size)};
    return ChoiceInstance{family, p, index_set, std::move(choices),
                          filter_from_generators(index_set, generators)};
}

DistinguishedSubsets distinguished_subset(const ChoiceInstance& inst,
                                          const PowerColoring& phi) {
    const int p = inst.p;
    if (!is_prime(p)) fail(errc::bad_n, "set size must be prime");

    DistinguishedSubsets result;
    for (size_t t = 0; t < inst.family.size(); ++t) {
        const auto& x = inst.family[t];
        std::map<std::string, int> counts;
        for (const auto& element : x) counts[element] = 0;

        // classes of bijections x -> Z_p under adding a constant, keyed by
        // the cyclic shift least on x's declared order
        std::set<std::vector<int>> seen;
        std::vector<int> values(p);
        std::iota(values.begin(), values.end(), 0);
        do {
            std::vector<int> rep = values;
            for (int k = 1; k < p; ++k) {
                std::vector<int> shifted(p);
                for (int m = 0; m < p; ++m) shifted[m] = (values[m] + k) % p;
                rep = std::min(rep, shifted);
            }
            if (!seen.insert(rep).second) continue;

            int zero_shift = -1;
            for (int k = 0; k < p; ++k) {
                std::vector<int> digits(inst.index_set.size, 0);
                for (int i = 0; i < inst.index_set.size; ++i)
                    if (const int d = inst.choices[i][t]; d > 0)
                        digits[i] = (rep[d - 1] + k) % p;
                if (phi(digits) == 0) {
                    if (zero_shift >= 0)
                        fail(errc::extraction_failure,
                             "coloring kills two members of a bijection class");
                    zero_shift = k;
                }
            }
            if (zero_shift < 0)
                fail(errc::extraction_failure,
                     "coloring kills no member of a bijection class");

            // the distinguished element is sent to 0 by the killed bijection
            for (int m = 0; m < p; ++m)
                if ((rep[m] + zero_shift) % p == 0) ++counts[x[m]];
        } while (std::next_permutation(values.begin(), values.end()));

        int best = 0;
        for (const auto& [element, count] : counts) best = std::max(best, count);
        std::vector<std::string> subset;
        for (const auto& element : x)
            if (counts.at(element) == best) subset.push_back(element);
        if (subset.empty() || subset.size() == x.size())
            fail(errc::extraction_failure, "distinguished set is not a proper subset");
        result.subsets.push_back(std::move(subset));
        result.counts.push_back(std::move(counts));
    }
    return result;
}

DistinguishedSubsets distinguished_subset(const ChoiceInstance& inst,
                                          const Homomorphism& phi, long long budget) {
    if (!is_prime(inst.p)) fail(errc::bad_n, "set size must be prime");
    const TolerantPower power =
        tolerant_power(directed_cycle(inst.p).structure, inst.filter, budget);
    if (phi.source != power.carrier || phi.target != power.base_structure ||
        !is_homomorphism(phi))
        fail(errc::invalid_homomorphism, "input is not a coloring of the instance power");
    return distinguished_subset(inst, [&](const std::vector<int>& digits) {
        return std::stoi(phi.assignment.at(power.id_for_digits(digits)));
    });
}

Structure order_two_structure() {
    Structure s;
    s.signature.symbols = {{"leq", 2}, {"neq", 2}};
    s.universe = {"0", "1"};
    s.relations["leq"] = {{"0", "0"}, {"0", "1"}, {"1", "1"}};
    s.relations["neq"] = {{"0", "1"}, {"1", "0"}};
    return s;
}

OrderExtension order_structure_hom(const FiniteFilter& f, long long budget) {
    const Structure base = order_two_structure();
    AgreementQuotient q = quotient_by_agreement(tolerant_power(base, f, budget));
    const auto& classes = q.quotient.universe;
    const int count = static_cast<int>(classes.size());

    auto position = [&](const std::string& id) { return q.quotient.position(id); };

    // the quotient's leq must be a partial order on the classes
    const auto& leq = q.quotient.relations.at("leq");
    std::vector<std::vector<char>> related(count, std::vector<char>(count, 0));
    for (const auto& tuple : leq)
        related[position(tuple[0])][position(tuple[1])] = 1;
    for (int a = 0; a < count; ++a) {
        if (!related[a][a]) fail(errc::not_a_partial_order, "class order is not reflexive");
        for (int b = 0; b < count; ++b) {
            if (a != b && related[a][b] && related[b][a])
                fail(errc::not_a_partial_order, "class order is not antisymmetric");
            for (int c = 0; related[a][b] && c < count; ++c)
                if (related[b][c] && !related[a][c])
                    fail(errc::not_a_partial_order, "class order is not transitive");
        }
    }

    // deterministic linear extension: repeatedly take the least-positioned
    // class whose strict predecessors are all placed
    std::vector<int> indegree(count, 0);
    for (int a = 0; a < count; ++a)
        for (int b = 0; b < count; ++b)
            if (a != b && related[a][b]) ++indegree[b];
    std::vector<int> order_of(count, -1);
    OrderExtension result;
    for (int placed = 0; placed < count; ++placed) {
        int next = -1;
        for (int b = 0; b < count; ++b)
            if (order_of[b] < 0 && indegree[b] == 0) { next = b; break; }
        if (next < 0) fail(errc::not_a_partial_order, "class order has a cycle");
        order_of[next] = placed;
        result.linear_order.push_back(classes[next]);
        for (int b = 0; b < count; ++b)
            if (b != next && related[next][b]) --indegree[b];
    }

    std::map<std::string, std::string> assignment;
    for (const auto& id : classes) {
        std::vector<int> complement = q.power.digits_of(id);
        for (int& d : complement) d = 1 - d;
        const std::string partner =
            q.projection.assignment.at(q.power.id_for_digits(complement));
        assignment[id] = order_of[position(id)] < order_of[position(partner)] ? "0" : "1";
    }

    result.hom = Homomorphism{q.quotient, base, std::move(assignment)};
    if (!is_homomorphism(result.hom))
        fail(errc::validation_failure, "order coloring failed to validate");
    result.quotient = std::move(q);
    return result;
}

}  // namespace homlab
