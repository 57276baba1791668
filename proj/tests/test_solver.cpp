#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "homlab/core.hpp"
#include "homlab/cycles.hpp"
#include "homlab/experiments.hpp"
#include "homlab/solver.hpp"
#include "oracles.hpp"

using namespace homlab;

TEST_CASE("arc consistency fixpoints") {
    Structure k2 = complete_graph(2);

    // the classic gap: arc-consistent but homomorphism-free
    Structure c5 = undirected_cycle(5);
    DomainState state = arc_consistency(c5, k2);
    for (const auto& [x, dom] : state.domains) CHECK(dom == k2.universe);
    CHECK_FALSE(hom_exists(c5, k2).has_value());
    CHECK_FALSE(oracle::hom_exists(c5, k2));

    DomainState looped = arc_consistency(single_loop(), k2);
    CHECK(looped.domains.at("0").empty());

    DomainState edge = arc_consistency(complete_graph(2), k2);
    CHECK(edge.domains.at("0") == k2.universe);
    CHECK(edge.domains.at("1") == k2.universe);
}

TEST_CASE("arc consistency rejects signature mismatch") {
    try {
        arc_consistency(complete_graph(2), directed_cycle(2).structure);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == errc::signature_mismatch);
    }
}

TEST_CASE("hom existence spot checks") {
    auto same = hom_exists(complete_graph(3), complete_graph(3));
    REQUIRE(same.has_value());
    CHECK(is_homomorphism(*same));

    CHECK_FALSE(hom_exists(complete_graph(3), complete_graph(2)).has_value());

    auto path = hom_exists(undirected_path(3), undirected_cycle(5));
    REQUIRE(path.has_value());
    CHECK(is_homomorphism(*path));
}

TEST_CASE("pinned search") {
    auto pinned = hom_exists(complete_graph(3), complete_graph(3), {{"0", "1"}});
    REQUIRE(pinned.has_value());
    CHECK(pinned->assignment.at("0") == "1");
    CHECK(is_homomorphism(*pinned));

    CHECK_FALSE(hom_exists(complete_graph(2), complete_graph(2),
                           {{"0", "1"}, {"1", "1"}})
                    .has_value());
}

TEST_CASE("enumeration matches known counts and order") {
    Structure c3 = directed_cycle(3).structure;
    Enumeration rotations = hom_enumerate(c3, c3, 100);
    CHECK(rotations.homomorphisms.size() == 3);
    CHECK_FALSE(rotations.truncated);
    for (const auto& h : rotations.homomorphisms) CHECK(is_homomorphism(h));

    Structure k2 = complete_graph(2);
    Enumeration swaps = hom_enumerate(k2, k2, 100);
    REQUIRE(swaps.homomorphisms.size() == 2);
    // lexicographic: identity first, swap second
    CHECK(swaps.homomorphisms[0].assignment.at("0") == "0");
    CHECK(swaps.homomorphisms[1].assignment.at("0") == "1");

    CHECK(hom_enumerate(complete_graph(3), k2, 100).homomorphisms.empty());

    Enumeration cut = hom_enumerate(k2, k2, 1);
    CHECK(cut.homomorphisms.size() == 1);
    CHECK(cut.truncated);
}

TEST_CASE("oracle equivalence on the corpus") {
    auto corpus = standard_corpus(200);
    for (const auto& [source, target] : corpus) {
        auto expected = oracle::all_homs(source, target);
        auto got = hom_enumerate(source, target, 1 << 20);
        REQUIRE_FALSE(got.truncated);
        REQUIRE(got.homomorphisms.size() == expected.size());
        for (size_t i = 0; i < expected.size(); ++i)
            CHECK(got.homomorphisms[i].assignment == expected[i]);
        CHECK(hom_exists(source, target).has_value() == !expected.empty());
    }
}

TEST_CASE("pruning never removes a homomorphism value") {
    auto corpus = standard_corpus(60);
    for (const auto& [source, target] : corpus) {
        DomainState state = arc_consistency(source, target);
        for (const auto& assignment : oracle::all_homs(source, target))
            for (const auto& [x, v] : assignment) {
                const auto& dom = state.domains.at(x);
                CHECK(std::find(dom.begin(), dom.end(), v) != dom.end());
            }
    }
}

TEST_CASE("propagation is idempotent") {
    auto corpus = standard_corpus(60);
    for (const auto& [source, target] : corpus) {
        DomainState state = arc_consistency(source, target);
        CHECK(arc_consistency_refine(source, target, state) == state);
    }
}
