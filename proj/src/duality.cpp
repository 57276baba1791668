#include "homlab/duality.hpp"

#include <algorithm>
#include <sstream>

#include "homlab/solver.hpp"

namespace homlab {

std::string subset_id(const Structure& base, const std::vector<int>& positions) {
    std::ostringstream out;
    out << "{";
    for (size_t i = 0; i < positions.size(); ++i) {
        if (i) out << ",";
        out << base.universe[positions[i]];
    }
    out << "}";
    return out.str();
}

PowerSetStructure power_set_structure(const Structure& a, int budget) {
    const int n = static_cast<int>(a.universe.size());
    if (n > budget)
        fail(errc::budget_exceeded,
             "power-set construction over " + std::to_string(n) + " elements (budget " +
                 std::to_string(budget) + ")");

    PowerSetStructure out;
    out.base = a;
    out.derived.signature = a.signature;

    // masks ordered numerically; bit i = universe position i
    std::vector<std::vector<int>> subsets;
    for (int mask = 1; mask < (1 << n); ++mask) {
        std::vector<int> members;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1) members.push_back(i);
        out.derived.universe.push_back(subset_id(a, members));
        subsets.push_back(std::move(members));
    }

    const int count = static_cast<int>(subsets.size());
    for (const auto& [name, arity] : a.signature.symbols) {
        auto& dst = out.derived.relations[name];
        const auto& rel = a.relations.at(name);

        std::vector<int> pick(arity, 0);
        while (true) {
            // keep base tuples inside the box, then compare projections
            std::vector<std::set<int>> projection(arity);
            for (const auto& t : rel) {
                bool inside = true;
                for (int j = 0; j < arity && inside; ++j) {
                    const int pos = a.position(t[j]);
                    inside = std::binary_search(subsets[pick[j]].begin(),
                                                subsets[pick[j]].end(), pos);
                }
                if (!inside) continue;
                for (int j = 0; j < arity; ++j) projection[j].insert(a.position(t[j]));
            }
            bool full = true;
            for (int j = 0; j < arity && full; ++j)
                full = std::equal(projection[j].begin(), projection[j].end(),
                                  subsets[pick[j]].begin(), subsets[pick[j]].end()) &&
                       projection[j].size() == subsets[pick[j]].size();
            if (full) {
                std::vector<std::string> tuple;
                tuple.reserve(arity);
                for (int j = 0; j < arity; ++j)
                    tuple.push_back(out.derived.universe[pick[j]]);
                dst.insert(std::move(tuple));
            }

            int j = arity - 1;
            while (j >= 0 && pick[j] == count - 1) pick[j--] = 0;
            if (j < 0) break;
            ++pick[j];
        }
    }
    return out;
}

WidthOneVerdict width_one(const Structure& a, int budget) {
    const PowerSetStructure p = power_set_structure(a, budget);
    auto witness = hom_exists(p.derived, a);
    return WidthOneVerdict{witness.has_value(), std::move(witness)};
}

Homomorphism minimal_support_map(const TolerantPower& p, int budget) {
    const PowerSetStructure ps = power_set_structure(p.base_structure, budget);
    const int n = static_cast<int>(p.base_structure.universe.size());

    std::map<std::string, std::string> assignment;
    for (size_t pos = 0; pos < p.carrier.universe.size(); ++pos) {
        const auto& digits = p.element_digits[pos];
        // intersect every subset whose preimage is a filter member; the
        // family is closed under intersection, so this is its least element
        int least = (1 << n) - 1;
        for (int mask = 1; mask < (1 << n); ++mask) {
            std::vector<int> preimage;
            for (int i = 0; i < p.filter.index_set.size; ++i)
                if (mask >> digits[i] & 1) preimage.push_back(i);
            if (filter_membership(p.filter, preimage)) least &= mask;
        }
        std::vector<int> members;
        for (int i = 0; i < n; ++i)
            if (least >> i & 1) members.push_back(i);
        assignment[p.carrier.universe[pos]] = subset_id(p.base_structure, members);
    }
    return checked_homomorphism(p.carrier, ps.derived, std::move(assignment));
}

}  // namespace homlab
