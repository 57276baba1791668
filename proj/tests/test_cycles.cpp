#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "homlab/core.hpp"
#include "homlab/cycles.hpp"
#include "homlab/power.hpp"
#include "homlab/solver.hpp"

using namespace homlab;

namespace {

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

// evaluation at a coordinate, then rotation by r around the cycle
Homomorphism rotated_evaluation(const TolerantPower& p, int n, int coord, int r) {
    std::map<std::string, std::string> assignment;
    for (const auto& id : p.carrier.universe)
        assignment[id] = std::to_string((p.digits_of(id)[coord] + r) % n);
    return Homomorphism{p.carrier, p.base_structure, assignment};
}

}  // namespace

TEST_CASE("directed cycles") {
    DirectedCycle two = directed_cycle(2);
    CHECK(two.structure.relations.at("R") ==
          std::set<std::vector<std::string>>{{"0", "1"}, {"1", "0"}});

    DirectedCycle three = directed_cycle(3);
    CHECK(three.structure.relations.at("R") ==
          std::set<std::vector<std::string>>{{"0", "1"}, {"1", "2"}, {"2", "0"}});

    try {
        directed_cycle(1);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == errc::bad_n);
    }
}

TEST_CASE("chinese remainder isomorphism") {
    Homomorphism iso = crt_isomorphism(2, 3);
    CHECK(iso.assignment.at("0") == "(0,0)");
    CHECK(iso.assignment.at("1") == "(1,1)");
    CHECK(iso.assignment.at("5") == "(1,2)");
    CHECK(is_homomorphism(iso));

    try {
        crt_isomorphism(2, 4);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == errc::not_coprime);
    }
    try {
        crt_isomorphism(1, 5);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == errc::bad_n);
    }
}

TEST_CASE("chinese remainder map for every coprime pair up to 30") {
    for (int p = 2; p <= 15; ++p)
        for (int q = 2; q <= 15; ++q) {
            if (p * q > 30 || std::gcd(p, q) != 1) continue;
            Homomorphism iso = crt_isomorphism(p, q);
            CHECK(is_homomorphism(iso));
            for (int k = 0; k < p * q; ++k)
                CHECK(iso.assignment.at(std::to_string(k)) ==
                      "(" + std::to_string(k % p) + "," + std::to_string(k % q) + ")");
        }
}

TEST_CASE("divisor transfer of rotated evaluations") {
    for (const auto& [k, p] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}}) {
        const int kp = k * p;
        Structure small_cycle = directed_cycle(p).structure;
        for (int isize = 1; isize <= 2; ++isize)
            for (const auto& base : nonempty_bases(isize)) {
                FiniteFilter f = filter_from_base(IndexSet{isize}, base);
                TolerantPower big = tolerant_power(directed_cycle(kp).structure, f);
                TolerantPower small_power = tolerant_power(small_cycle, f);
                Structure k_step = reachability_power(directed_cycle(kp).structure, "R", k);

                for (int coord : base)
                    for (int r = 0; r < kp; ++r) {
                        Homomorphism phi = rotated_evaluation(big, kp, coord, r);
                        REQUIRE(is_homomorphism(phi));
                        Homomorphism psi = divisor_transfer(big, phi, k, p);
                        CHECK(is_homomorphism(psi));
                        CHECK(psi.source.universe == small_power.carrier.universe);

                        // scaled images step by k in the big cycle, so the
                        // transfer advances by one on every related pair
                        for (const auto& t : small_power.carrier.relations.at("R")) {
                            int jf = std::stoi(psi.assignment.at(t[0]));
                            int jg = std::stoi(psi.assignment.at(t[1]));
                            CHECK(jg == (jf + 1) % p);

                            auto scale = [&](const std::string& id) {
                                std::vector<int> digits = small_power.digits_of(id);
                                for (int& d : digits) d = k * d % kp;
                                return big.id_for_digits(digits);
                            };
                            CHECK(k_step.relations.at("R").count(
                                      {phi.assignment.at(scale(t[0])),
                                       phi.assignment.at(scale(t[1]))}) == 1);
                        }
                    }
            }
    }
}

TEST_CASE("divisor transfer on one index is division by k") {
    TolerantPower big =
        tolerant_power(directed_cycle(6).structure, filter_from_base(IndexSet{1}, {0}));
    for (int r = 0; r < 6; ++r) {
        Homomorphism phi = rotated_evaluation(big, 6, 0, r);
        for (const auto& [k, p] : std::vector<std::pair<int, int>>{{3, 2}, {2, 3}}) {
            Homomorphism psi = divisor_transfer(big, phi, k, p);
            for (int j = 0; j < p; ++j) {
                int image = std::stoi(phi.assignment.at(std::to_string(k * j % 6)));
                CHECK(psi.assignment.at(std::to_string(j)) == std::to_string(image / k));
            }
        }
    }
}

TEST_CASE("divisor transfer guards") {
    TolerantPower big =
        tolerant_power(directed_cycle(6).structure, filter_from_base(IndexSet{1}, {0}));
    Homomorphism phi = rotated_evaluation(big, 6, 0, 0);

    Homomorphism partial = phi;
    partial.assignment.erase("0");
    try {
        divisor_transfer(big, partial, 3, 2);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == errc::invalid_homomorphism);
    }

    TolerantPower wrong =
        tolerant_power(directed_cycle(5).structure, filter_from_base(IndexSet{1}, {0}));
    try {
        divisor_transfer(wrong, rotated_evaluation(wrong, 5, 0, 0), 3, 2);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == errc::signature_mismatch);
    }

    CHECK_THROWS_AS(divisor_transfer(big, phi, 1, 6), Error);
}

TEST_CASE("component census") {
    auto census_of = [](int n, int isize, std::vector<int> base) {
        TolerantPower p = tolerant_power(directed_cycle(n).structure,
                                         filter_from_base(IndexSet{isize}, std::move(base)));
        return component_census(quotient_by_agreement(p));
    };

    ComponentCensus one = census_of(3, 2, {0});
    CHECK(one.count == 1);
    REQUIRE(one.components.size() == 1);
    CHECK(one.components[0].size() == 3);

    ComponentCensus three = census_of(3, 2, {0, 1});
    CHECK(three.count == 3);
    for (const auto& comp : three.components) CHECK(comp.size() == 3);

    ComponentCensus four = census_of(2, 3, {0, 1, 2});
    CHECK(four.count == 4);

    for (const auto& census : {one, three, four}) {
        CHECK(census.witnesses.size() == census.components.size());
        for (const auto& w : census.witnesses) CHECK(is_homomorphism(w));
    }
}

TEST_CASE("census counts follow the base size") {
    for (int n = 2; n <= 4; ++n)
        for (int isize = 1; isize <= 3; ++isize)
            for (const auto& base : nonempty_bases(isize)) {
                TolerantPower p = tolerant_power(directed_cycle(n).structure,
                                                 filter_from_base(IndexSet{isize}, base));
                ComponentCensus census = component_census(quotient_by_agreement(p));
                long long expected = 1;
                for (size_t i = 1; i < base.size(); ++i) expected *= n;
                CHECK(census.count == expected);
            }
}

TEST_CASE("census rejects non-cycle bases") {
    TolerantPower p =
        tolerant_power(complete_graph(2), filter_from_base(IndexSet{2}, {0}));
    try {
        component_census(quotient_by_agreement(p));
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == errc::signature_mismatch);
    }
}

TEST_CASE("choice filters over families of p-sets") {
    ChoiceInstance two = choice_filter({{"a", "b"}, {"c", "d"}});
    CHECK(two.p == 2);
    CHECK(two.index_set.size == 9);
    CHECK(two.filter.base.size() == 4);

    ChoiceInstance three = choice_filter({{"a", "b", "c"}});
    CHECK(three.p == 3);
    CHECK(three.index_set.size == 4);
    CHECK(three.filter.base.size() == 3);

    // the base is exactly the set of total choice functions
    for (ChoiceInstance* inst : {&two, &three})
        for (int i = 0; i < inst->index_set.size; ++i) {
            bool total = true;
            for (int digit : inst->choices[i])
                if (digit == 0) total = false;
            CHECK(subset_contains(inst->filter.base, {i}) == total);
        }

    try {
        choice_filter({});
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == errc::empty_subset);
    }
    try {
        choice_filter({{"a", "b"}, {"c"}});
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == errc::parse_error);
    }
    try {
        choice_filter({{"a", "b"}, {"b", "c"}});
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == errc::parse_error);
    }
    try {
        choice_filter({{"a", "b"}}, 2);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == errc::budget_exceeded);
    }
}

TEST_CASE("distinguished subsets are nonempty and proper") {
    for (const auto& family : std::vector<std::vector<std::vector<std::string>>>{
             {{"a", "b"}},
             {{"a", "b"}, {"c", "d"}},
             {{"a", "b", "c"}},
         }) {
        ChoiceInstance inst = choice_filter(family);
        TolerantPower power = tolerant_power(directed_cycle(inst.p).structure, inst.filter);
        for (const auto& u : extend_to_ultrafilter(inst.filter)) {
            Homomorphism phi = ultrafilter_hom(power, u);
            DistinguishedSubsets picked = distinguished_subset(inst, phi);
            REQUIRE(picked.subsets.size() == family.size());
            for (size_t t = 0; t < family.size(); ++t) {
                CHECK_FALSE(picked.subsets[t].empty());
                CHECK(picked.subsets[t].size() < family[t].size());
                for (const auto& member : picked.subsets[t]) {
                    CHECK(std::find(family[t].begin(), family[t].end(), member) !=
                          family[t].end());
                }
            }

            // the lazy evaluation path must agree with the materialized one
            const int at = u.base.front();
            DistinguishedSubsets lazy = distinguished_subset(
                inst, [&](const std::vector<int>& digits) { return digits[at]; });
            CHECK(lazy.subsets == picked.subsets);
            CHECK(lazy.counts == picked.counts);
        }
    }
}

TEST_CASE("distinguished subset rejects broken colorings") {
    ChoiceInstance inst = choice_filter({{"a", "b"}});
    TolerantPower power = tolerant_power(directed_cycle(2).structure, inst.filter);
    Homomorphism phi = ultrafilter_hom(power, extend_to_ultrafilter(inst.filter).front());
    phi.assignment.erase(phi.assignment.begin()->first);
    try {
        distinguished_subset(inst, phi);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == errc::invalid_homomorphism);
    }
}

TEST_CASE("order structure") {
    Structure two = order_two_structure();
    CHECK(two.universe == std::vector<std::string>{"0", "1"});
    CHECK(two.relations.at("leq") ==
          std::set<std::vector<std::string>>{{"0", "0"}, {"0", "1"}, {"1", "1"}});
    CHECK(two.relations.at("neq") ==
          std::set<std::vector<std::string>>{{"0", "1"}, {"1", "0"}});
}

TEST_CASE("order extension homomorphism") {
    OrderExtension unit = order_structure_hom(filter_from_base(IndexSet{1}, {0}));
    CHECK(unit.hom.assignment.at("0") == "0");
    CHECK(unit.hom.assignment.at("1") == "1");

    OrderExtension square = order_structure_hom(filter_from_base(IndexSet{2}, {0, 1}));
    CHECK(square.hom.assignment.at("0,0") == "0");
    CHECK(square.hom.assignment.at("1,1") == "1");

    OrderExtension collapsed = order_structure_hom(filter_from_base(IndexSet{3}, {1}));
    CHECK(collapsed.quotient.classes.size() == 2);
    CHECK(collapsed.hom.assignment.at("0,0,0") == "0");
}

TEST_CASE("order extension separates complements on every base") {
    for (int isize = 1; isize <= 3; ++isize)
        for (const auto& base : nonempty_bases(isize)) {
            OrderExtension oe = order_structure_hom(filter_from_base(IndexSet{isize}, base));
            CHECK(is_homomorphism(oe.hom));

            const TolerantPower& p = oe.quotient.power;
            for (const auto& rep : oe.quotient.quotient.universe) {
                std::vector<int> digits = p.digits_of(rep);
                for (int& d : digits) d = 1 - d;
                std::string partner =
                    oe.quotient.projection.assignment.at(p.id_for_digits(digits));
                CHECK(oe.hom.assignment.at(rep) != oe.hom.assignment.at(partner));
            }

            // the linear order extends the quotient's own order relation
            auto place = [&](const std::string& id) {
                for (size_t i = 0; i < oe.linear_order.size(); ++i)
                    if (oe.linear_order[i] == id) return i;
                return oe.linear_order.size();
            };
            for (const auto& t : oe.quotient.quotient.relations.at("leq"))
                CHECK(place(t[0]) <= place(t[1]));
        }
}
