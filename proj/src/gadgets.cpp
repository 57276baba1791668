#include "homlab/gadgets.hpp"

#include <algorithm>
#include <bit>

#include "homlab/solver.hpp"

namespace homlab {

namespace {

long long pow_or_bail(long long a, long long b, long long cap, const char* what) {
    long long r = 1;
    for (long long i = 0; i < b; ++i) {
        if (a > 0 && r > cap / a) fail(errc::budget_exceeded, what);
        r *= a;
    }
    return r;
}

void check_gadget(const Gadget& g, const Structure& a) {
    if (g.structure.signature != a.signature)
        fail(errc::signature_mismatch, "gadget and target need equal signatures");
    if (g.structure.position(g.x) < 0)
        fail(errc::unknown_element, "marked element \"" + g.x + "\" not in the gadget");
    if (g.structure.position(g.y) < 0)
        fail(errc::unknown_element, "marked element \"" + g.y + "\" not in the gadget");
}

}  // namespace

std::set<std::pair<std::string, std::string>> pp_relation(const Gadget& g, const Structure& a,
                                                          long long budget) {
    check_gadget(g, a);
    const long long total =
        pow_or_bail(static_cast<long long>(a.universe.size()),
                    static_cast<long long>(g.structure.universe.size()), budget,
                    "gadget enumeration over budget");
    auto enumeration = hom_enumerate(g.structure, a, total);

    std::set<std::pair<std::string, std::string>> out;
    for (const auto& h : enumeration.homomorphisms)
        out.insert({h.assignment.at(g.x), h.assignment.at(g.y)});
    return out;
}

bool defines_clique(const Gadget& g, const Structure& a, long long budget) {
    std::set<std::pair<std::string, std::string>> inequality;
    for (const auto& u : a.universe)
        for (const auto& v : a.universe)
            if (u != v) inequality.insert({u, v});
    return pp_relation(g, a, budget) == inequality;
}

LiftReport lift_hom(const Gadget& g, const Structure& a, const TolerantPower& pa,
                    const Homomorphism& phi, long long budget) {
    if (!defines_clique(g, a, budget))
        fail(errc::not_a_clique, "the gadget does not define inequality on the target");
    if (pa.base_structure != a)
        fail(errc::invalid_homomorphism, "power does not sit over the given target");
    if (phi.source.universe != pa.carrier.universe || phi.target.universe != a.universe)
        fail(errc::invalid_homomorphism, "coloring must map the carrier onto the target universe");
    for (const auto& id : pa.carrier.universe) {
        auto it = phi.assignment.find(id);
        if (it == phi.assignment.end())
            fail(errc::invalid_homomorphism, "coloring misses carrier element \"" + id + "\"");
        if (a.position(it->second) < 0)
            fail(errc::invalid_homomorphism, "coloring leaves the target universe");
    }

    // pinned gadget homomorphisms: for each ordered pair of distinct target
    // values, the first enumerated map sending x, y there
    const long long total =
        pow_or_bail(static_cast<long long>(a.universe.size()),
                    static_cast<long long>(g.structure.universe.size()), budget,
                    "gadget enumeration over budget");
    auto enumeration = hom_enumerate(g.structure, a, total);
    std::map<std::pair<std::string, std::string>, const Homomorphism*> pinned;
    for (const auto& h : enumeration.homomorphisms)
        pinned.insert({{h.assignment.at(g.x), h.assignment.at(g.y)}, &h});

    const auto& universe = pa.carrier.universe;
    const int ni = pa.filter.index_set.size;

    LiftReport report;
    report.verdict = true;
    for (size_t fi = 0; fi < universe.size(); ++fi) {
        for (size_t gi = fi + 1; gi < universe.size(); ++gi) {
            const auto& fd = pa.element_digits[fi];
            const auto& gd = pa.element_digits[gi];
            std::vector<int> difference;
            for (int i = 0; i < ni; ++i)
                if (fd[i] != gd[i]) difference.push_back(i);
            if (!filter_membership(pa.filter, difference)) continue;

            LiftPairWitness w;
            w.f = universe[fi];
            w.g = universe[gi];
            w.difference_set = difference;
            w.difference_in_filter = true;
            w.properly_colored =
                phi.assignment.at(universe[fi]) != phi.assignment.at(universe[gi]);

            // the witness map: z -> the function whose i-th value follows the
            // pinned homomorphism for (f(i), g(i)) where they differ, f(i)
            // elsewhere
            for (const auto& z : g.structure.universe) {
                std::vector<int> digits(ni);
                for (int i = 0; i < ni; ++i) {
                    if (fd[i] == gd[i]) {
                        digits[i] = fd[i];
                    } else {
                        const auto* h = pinned.at(
                            {a.universe[fd[i]], a.universe[gd[i]]});
                        digits[i] = a.position(h->assignment.at(z));
                    }
                }
                w.psi_assignment[z] = pa.id_for_digits(digits);
            }
            Homomorphism psi{g.structure, pa.carrier, w.psi_assignment};
            w.psi_valid = is_homomorphism(psi);

            if (!w.properly_colored || !w.psi_valid) {
                report.verdict = false;
                if (!report.violating_pair) report.violating_pair = {w.f, w.g};
            }
            report.pairs.push_back(std::move(w));
        }
    }
    return report;
}

namespace {

bool is_complete_graph_shape(const Structure& s) {
    if (s.signature.symbols.size() != 1 || s.signature.symbols[0].second != 2) return false;
    const auto& rel = s.relations.at(s.signature.symbols[0].first);
    const size_t n = s.universe.size();
    if (rel.size() != n * (n - 1)) return false;
    for (const auto& t : rel)
        if (t[0] == t[1]) return false;
    return true;
}

}  // namespace

ExtractionWitness extract_ultrafilter(const TolerantPower& p, const Homomorphism& phi) {
    const int n = static_cast<int>(p.base_structure.universe.size());
    if (n < 3) fail(errc::bad_n, "extraction needs at least three colors");
    if (!is_complete_graph_shape(p.base_structure))
        fail(errc::parse_error, "extraction expects a power of a complete graph");

    auto violations = homomorphism_violations(phi);
    if (!violations.empty()) fail(errc::invalid_homomorphism, violations.front());
    if (phi.source.universe != p.carrier.universe || phi.target.universe != p.base_structure.universe)
        fail(errc::invalid_homomorphism, "coloring must map the carrier onto its base structure");

    const int ni = p.filter.index_set.size;
    if (ni > 20) fail(errc::budget_exceeded, "index set too large for subset enumeration");

    auto color_of = [&](const std::vector<int>& digits) {
        return p.base_structure.position(phi.assignment.at(p.id_for_digits(digits)));
    };

    // rename colors so each constant maps to its own value
    std::vector<int> normalization(n, -1);
    for (int k = 0; k < n; ++k) {
        const int c = color_of(std::vector<int>(ni, k));
        if (normalization[c] != -1)
            fail(errc::invalid_homomorphism, "coloring is not injective on constants");
        normalization[c] = k;
    }
    // Only ever called on functions into the first three values. Those are
    // adjacent to every larger constant, so their renamed color must stay
    // below three; leaving that range is a theorem violation.
    auto value = [&](const std::vector<int>& digits) {
        const int v = normalization[color_of(digits)];
        if (v > 2) fail(errc::extraction_failure, "restriction left the first three colors");
        return v;
    };

    auto digits_for = [&](const std::vector<char>& in_x, int inside, int outside) {
        std::vector<int> digits(ni);
        for (int i = 0; i < ni; ++i) digits[i] = in_x[i] ? inside : outside;
        return digits;
    };

    // the candidate family: X is a member when the indicator of X gets value 1
    const int subsets = 1 << ni;
    std::vector<char> member(subsets, 0);
    auto mask_bits = [&](int mask) {
        std::vector<char> bits(ni, 0);
        for (int i = 0; i < ni; ++i) bits[i] = (mask >> i) & 1;
        return bits;
    };
    for (int mask = 0; mask < subsets; ++mask)
        member[mask] = (value(digits_for(mask_bits(mask), 1, 0)) == 1);

    ExtractionChecks checks;

    // every filter member must be in the family
    checks.contains_filter = true;
    int base_mask = 0;
    for (int i : p.filter.base) base_mask |= 1 << i;
    for (int mask = 0; mask < subsets; ++mask)
        if ((mask & base_mask) == base_mask && !member[mask]) checks.contains_filter = false;

    // exactly one of X and its complement
    checks.complement_dichotomy = true;
    for (int mask = 0; mask < subsets; ++mask) {
        const int comp = ~mask & (subsets - 1);
        if (member[mask] == member[comp]) checks.complement_dichotomy = false;
    }

    // upward closure, witnessed through the two-valued companion pair: on a
    // member X the pair (2,1) inside / (1,2) outside must take values 2 and
    // 1, and every superset of X must again be a member
    checks.upward_closure = true;
    for (int mask = 0; mask < subsets && checks.upward_closure; ++mask) {
        if (!member[mask]) continue;
        const auto bits = mask_bits(mask);
        if (value(digits_for(bits, 2, 1)) != 2) checks.upward_closure = false;
        if (value(digits_for(bits, 1, 2)) != 1) checks.upward_closure = false;
        for (int sup = mask; sup < subsets; sup = (sup + 1) | mask)
            if (!member[sup]) { checks.upward_closure = false; break; }
    }

    // intersection closure, witnessed through the three-region trichotomy
    // functions: with regions X&Y / X\Y / outside X taking value patterns
    // (0,1,2), (2,0,1), (1,2,0), the function vanishing on X&Y must be the
    // one colored 0, and X&Y must be a member
    checks.intersection_closure = true;
    for (int x = 0; x < subsets && checks.intersection_closure; ++x) {
        if (!member[x]) continue;
        for (int y = 0; y < subsets && checks.intersection_closure; ++y) {
            if (!member[y]) continue;
            const int both = x & y, only_x = x & ~y;
            auto region_digits = [&](int v_both, int v_only, int v_out) {
                std::vector<int> digits(ni);
                for (int i = 0; i < ni; ++i) {
                    if (both >> i & 1) digits[i] = v_both;
                    else if (only_x >> i & 1) digits[i] = v_only;
                    else digits[i] = v_out;
                }
                return digits;
            };
            if (value(region_digits(0, 1, 2)) != 0) checks.intersection_closure = false;
            if (value(region_digits(2, 0, 1)) == 0) checks.intersection_closure = false;
            if (value(region_digits(1, 2, 0)) == 0) checks.intersection_closure = false;
            if (!member[both]) checks.intersection_closure = false;
        }
    }

    if (!checks.contains_filter || !checks.complement_dichotomy || !checks.upward_closure ||
        !checks.intersection_closure)
        fail(errc::extraction_failure, "family checks failed on a validated coloring");

    // the least member is the intersection of all members; it must be a
    // singleton and the family must be exactly the sets containing it
    int least = subsets - 1;
    for (int mask = 0; mask < subsets; ++mask)
        if (member[mask]) least &= mask;
    if (std::popcount(static_cast<unsigned>(least)) != 1)
        fail(errc::extraction_failure, "least member is not a singleton");
    for (int mask = 0; mask < subsets; ++mask)
        if (member[mask] != ((mask & least) == least))
            fail(errc::extraction_failure, "family is not principal at its least member");

    std::vector<int> base;
    for (int i = 0; i < ni; ++i)
        if (least >> i & 1) base.push_back(i);

    return ExtractionWitness{std::move(normalization),
                             FiniteFilter{p.filter.index_set, std::move(base)}, checks};
}

}  // namespace homlab
