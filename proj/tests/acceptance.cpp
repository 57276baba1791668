// Acceptance gate: nine end-to-end criteria, one verdict line each, nonzero
// exit when any line fails. Each criterion carries a wall-clock limit that is
// part of the verdict.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "homlab/choice.hpp"
#include "homlab/core.hpp"
#include "homlab/cycles.hpp"
#include "homlab/duality.hpp"
#include "homlab/experiments.hpp"
#include "homlab/filters.hpp"
#include "homlab/gadgets.hpp"
#include "homlab/power.hpp"
#include "homlab/solver.hpp"
#include "oracles.hpp"

using namespace homlab;

namespace {

struct Criterion {
    std::string name;
    double limit_seconds;
    std::function<bool(std::string&)> body;  // fills the detail text
};

std::vector<std::vector<int>> nonempty_bases(int n) {
    std::vector<std::vector<int>> out;
    for (int mask = 1; mask < (1 << n); ++mask) {
        std::vector<int> s;
        for (int i = 0; i < n; ++i)
            if (mask & (1 << i)) s.push_back(i);
        out.push_back(std::move(s));
    }
    return out;
}

Homomorphism rotated_evaluation(const TolerantPower& p, int n, int coord, int r) {
    std::map<std::string, std::string> assignment;
    for (const auto& id : p.carrier.universe)
        assignment[id] = std::to_string((p.digits_of(id)[coord] + r) % n);
    return Homomorphism{p.carrier, p.base_structure, assignment};
}

bool solver_oracle_equivalence(std::string& detail) {
    const auto corpus = standard_corpus(500);
    int mismatches = 0;
    for (const auto& [source, target] : corpus) {
        const auto expected = oracle::all_homs(source, target);
        const auto got = hom_enumerate(source, target, 1 << 20);
        bool same = !got.truncated && got.homomorphisms.size() == expected.size() &&
                    hom_exists(source, target).has_value() == !expected.empty();
        if (same)
            for (size_t i = 0; i < expected.size(); ++i)
                if (got.homomorphisms[i].assignment != expected[i]) same = false;
        if (!same) ++mismatches;
    }
    std::ostringstream s;
    s << corpus.size() << " pairs, " << mismatches << " mismatches";
    detail = s.str();
    return mismatches == 0 && corpus.size() >= 500;
}

bool width_one_verdicts(std::string& detail) {
    const bool verdicts = !width_one(complete_graph(2)).width_one &&
                          !width_one(complete_graph(3)).width_one &&
                          width_one(single_loop()).width_one;

    const Structure c5 = undirected_cycle(5);
    const Structure k2 = complete_graph(2);
    const DomainState state = arc_consistency(c5, k2);
    bool all_full = true;
    for (const auto& [x, dom] : state.domains) all_full = all_full && dom.size() == 2;
    const bool hom_free = !hom_exists(c5, k2).has_value() && !oracle::hom_exists(c5, k2);

    if (!verdicts)
        detail = "a width verdict is wrong";
    else if (!all_full || !hom_free)
        detail = "5-cycle vs 2-clique gap check failed";
    else
        detail = "verdicts exact; 5-cycle vs 2-clique stays consistent yet unsolvable";
    return verdicts && all_full && hom_free;
}

bool coloring_ultrafilter_roundtrip(std::string& detail) {
    const ExperimentReport report = lauchli_roundtrip(2);
    int failed = 0;
    for (const auto& c : report.cases)
        if (!c.passed) ++failed;
    std::ostringstream s;
    s << report.cases.size() << " filter bases, " << failed << " failures";
    detail = s.str();
    return report.passed && failed == 0 && !report.cases.empty();
}

bool pp_definability(std::string& detail) {
    const Gadget gadget{undirected_path(3), "0", "3"};
    const Structure c5 = undirected_cycle(5);

    std::set<std::pair<std::string, std::string>> inequality;
    for (const auto& u : c5.universe)
        for (const auto& v : c5.universe)
            if (u != v) inequality.emplace(u, v);
    const bool exact = pp_relation(gadget, c5) == inequality && defines_clique(gadget, c5);

    const ExperimentReport lifts = pp_lift();
    std::ostringstream s;
    s << "defined relation " << (exact ? "matches" : "differs") << "; " << lifts.cases.size()
      << " lift cases";
    detail = s.str();
    return exact && lifts.passed;
}

bool cycle_factorization(std::string& detail) {
    int crt_pairs = 0;
    for (int p = 2; p <= 15; ++p)
        for (int q = 2; q <= 15; ++q) {
            if (p * q > 30 || std::gcd(p, q) != 1) continue;
            const Homomorphism iso = crt_isomorphism(p, q);  // validated both ways inside
            if (!is_homomorphism(iso)) {
                detail = "remainder map invalid at p=" + std::to_string(p) +
                         ", q=" + std::to_string(q);
                return false;
            }
            ++crt_pairs;
        }

    int transfers = 0;
    for (const auto& [k, p] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}}) {
        const int kp = k * p;
        for (int isize = 1; isize <= 2; ++isize)
            for (const auto& base : nonempty_bases(isize)) {
                const FiniteFilter f = filter_from_base(IndexSet{isize}, base);
                const TolerantPower big = tolerant_power(directed_cycle(kp).structure, f);
                const TolerantPower small_power = tolerant_power(directed_cycle(p).structure, f);
                for (int coord : base)
                    for (int r = 0; r < kp; ++r) {
                        const Homomorphism phi = rotated_evaluation(big, kp, coord, r);
                        const Homomorphism psi = divisor_transfer(big, phi, k, p);
                        if (!is_homomorphism(psi)) {
                            detail = "transferred coloring invalid";
                            return false;
                        }
                        for (const auto& t : small_power.carrier.relations.at("R")) {
                            const int jf = std::stoi(psi.assignment.at(t[0]));
                            const int jg = std::stoi(psi.assignment.at(t[1]));
                            if (jg != (jf + 1) % p) {
                                detail = "transfer misses a cycle step";
                                return false;
                            }
                        }
                        ++transfers;
                    }
            }
    }

    int censuses = 0;
    for (int n = 2; n <= 4; ++n)
        for (int isize = 1; isize <= 3; ++isize)
            for (const auto& base : nonempty_bases(isize)) {
                const TolerantPower power = tolerant_power(
                    directed_cycle(n).structure, filter_from_base(IndexSet{isize}, base));
                const ComponentCensus census = component_census(quotient_by_agreement(power));
                long long expected = 1;
                for (size_t i = 1; i < base.size(); ++i) expected *= n;
                if (census.count != expected) {
                    detail = "component count off for the " + std::to_string(n) + "-cycle";
                    return false;
                }
                ++censuses;
            }

    std::ostringstream s;
    s << crt_pairs << " remainder maps, " << transfers << " transfers, " << censuses
      << " censuses";
    detail = s.str();
    return true;
}

bool choice_extraction(std::string& detail) {
    const std::vector<std::vector<std::vector<std::string>>> families = {
        {{"a", "b"}},
        {{"a", "b"}, {"c", "d"}},
        {{"a", "b", "c"}},
        {{"a", "b", "c"}, {"d", "e", "f"}},
    };
    int extractions = 0;
    for (const auto& family : families) {
        const ChoiceInstance inst = choice_filter(family, 1 << 20);
        for (const auto& u : extend_to_ultrafilter(inst.filter)) {
            const int at = u.base.front();
            const DistinguishedSubsets picked = distinguished_subset(
                inst, [at](const std::vector<int>& digits) { return digits[at]; });
            if (picked.subsets.size() != family.size()) {
                detail = "subset count differs from the family size";
                return false;
            }
            for (size_t t = 0; t < family.size(); ++t)
                if (picked.subsets[t].empty() || picked.subsets[t].size() >= family[t].size()) {
                    detail = "a distinguished subset is empty or improper";
                    return false;
                }
            ++extractions;
        }
    }
    std::ostringstream s;
    s << extractions << " colorings, every subset nonempty and proper";
    detail = s.str();
    return true;
}

bool order_extension(std::string& detail) {
    int runs = 0;
    for (int isize = 1; isize <= 4; ++isize)
        for (const auto& base : nonempty_bases(isize)) {
            const OrderExtension oe =
                order_structure_hom(filter_from_base(IndexSet{isize}, base));
            if (!is_homomorphism(oe.hom)) {
                detail = "extension coloring invalid";
                return false;
            }

            const TolerantPower& p = oe.quotient.power;
            for (const auto& rep : oe.quotient.quotient.universe) {
                std::vector<int> digits = p.digits_of(rep);
                for (int& d : digits) d = 1 - d;
                const std::string partner =
                    oe.quotient.projection.assignment.at(p.id_for_digits(digits));
                if (oe.hom.assignment.at(rep) == oe.hom.assignment.at(partner)) {
                    detail = "complement classes collide";
                    return false;
                }
            }
            ++runs;
        }
    std::ostringstream s;
    s << runs << " filter bases, both relations preserved";
    detail = s.str();
    return true;
}

bool dependency_criteria(std::string& detail) {
    int agreements = 0;
    for (int m = 2; m <= 5; ++m) {
        const auto groups = subgroups(m);
        for (int n = 2; n <= 5; ++n) {
            std::set<int> s;
            for (int i = 2; i <= n; ++i) s.insert(i);
            if (gauntt_condition(m, s, groups) != prime_sum_criterion(m, n)) {
                detail = "mismatch at m=" + std::to_string(m) + ", n=" + std::to_string(n);
                return false;
            }
            ++agreements;
        }
    }
    if (!gauntt_condition(4, {2}) || gauntt_condition(3, {2})) {
        detail = "landmark verdicts wrong";
        return false;
    }
    std::ostringstream s;
    s << agreements << " criterion pairs agree; landmark verdicts exact";
    detail = s.str();
    return true;
}

bool power_structure_laws(std::string& detail) {
    const ExperimentReport report = com_ft_roundtrip();
    int failed = 0;
    for (const auto& c : report.cases)
        if (!c.passed) ++failed;
    std::ostringstream s;
    s << report.cases.size() << " cases, " << failed << " failures";
    detail = s.str();
    return report.passed && failed == 0 && !report.cases.empty();
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"solver agrees with exhaustive enumeration", 30.0, solver_oracle_equivalence},
        {"width-one verdicts and the consistency gap", 5.0, width_one_verdicts},
        {"coloring/ultrafilter round trip", 60.0, coloring_ultrafilter_roundtrip},
        {"gadget-defined clique adjacency and lifts", 10.0, pp_definability},
        {"cycle factorization, transfer, census", 30.0, cycle_factorization},
        {"distinguished subsets from cycle colorings", 30.0, choice_extraction},
        {"order-extension coloring", 10.0, order_extension},
        {"group criterion vs prime-sum criterion", 120.0, dependency_criteria},
        {"tolerant power structure laws", 60.0, power_structure_laws},
    };

    bool all_ok = true;
    for (size_t i = 0; i < criteria.size(); ++i) {
        const auto& criterion = criteria[i];
        std::string detail;
        bool ok = false;
        const auto start = std::chrono::steady_clock::now();
        try {
            ok = criterion.body(detail);
        } catch (const Error& e) {
            detail = std::string("error: ") + e.what();
        } catch (const std::exception& e) {
            detail = std::string("unexpected: ") + e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = elapsed < criterion.limit_seconds;
        const bool passed = ok && in_time;
        all_ok = all_ok && passed;
        std::printf("[%s] %zu %s: %s (%.2f s, limit %.0f s)\n", passed ? "PASS" : "FAIL",
                    i + 1, criterion.name.c_str(), detail.c_str(), elapsed,
                    criterion.limit_seconds);
        std::fflush(stdout);
    }
    std::printf("%s\n", all_ok ? "acceptance: all criteria hold" : "acceptance: FAILURES above");
    return all_ok ? 0 : 1;
}
