#include <algorithm>
#include <numeric>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "rcp/admissible.hpp"
#include "rcp/errors.hpp"

using namespace rcp;

TEST_CASE("is_admissible basics") {
    {
        const auto r = is_admissible({0, 2, 4});
        CHECK(!r.admissible);
        CHECK(*r.witness == 3);
    }
    CHECK(is_admissible({0, 2, 6}).admissible);
    CHECK(is_admissible({0}).admissible);
    CHECK_THROWS_AS(is_admissible({1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(is_admissible({}), std::invalid_argument);
}

TEST_CASE("p <= k shortcut agrees with the full check") {
    // every small tuple, and a spread of wider ones, checked against the
    // definition over all primes up to max(h)
    std::vector<std::vector<std::uint64_t>> tuples;
    for (std::uint64_t a = 1; a <= 12; ++a)
        for (std::uint64_t b = a + 1; b <= 24; ++b) tuples.push_back({0, a, b});
    for (std::uint64_t base = 0; base < 900; base += 97)
        tuples.push_back({base, base + 2, base + 6, base + 8, base + 12});
    for (const auto& h : tuples) {
        const std::uint64_t top = *std::max_element(h.begin(), h.end());
        CHECK(is_admissible(h).admissible == is_admissible(h, top).admissible);
    }
}

TEST_CASE("greedy_residue") {
    CHECK(greedy_residue({1, 2, 3, 4, 5}, 2) == 1);
    CHECK(greedy_residue({3, 6, 9}, 3) == 0);
    CHECK(greedy_residue({1}, 5) == 1);
    CHECK_THROWS_AS(greedy_residue({}, 3), std::invalid_argument);
    // pigeonhole: the chosen class hits at least |S|/p elements
    std::vector<std::uint64_t> S;
    for (std::uint64_t g = 7; g < 200; g += 3) S.push_back(g * g % 191);
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull}) {
        const auto a = greedy_residue(S, p);
        std::uint64_t hits = 0;
        for (auto g : S)
            if (g % p == a) ++hits;
        CHECK(hits * p >= S.size());
    }
}

TEST_CASE("sieve_interval examples") {
    SievePlan plan;
    plan.q = 1;
    plan.y = 7;
    plan.choice = {{2, 0}, {3, 0}, {5, 0}, {7, 0}};
    CHECK(sieve_interval(10, plan) == std::vector<std::uint64_t>{1});

    SievePlan plan2;
    plan2.q = 1;
    plan2.y = 5;
    plan2.choice = {{2, 1}, {3, 2}, {5, 3}};
    CHECK(sieve_interval(6, plan2) == std::vector<std::uint64_t>{4, 6});

    SievePlan empty;
    empty.q = 1;
    empty.y = 1;
    CHECK(sieve_interval(3, empty) == std::vector<std::uint64_t>{1, 2, 3});

    SievePlan incomplete;
    incomplete.q = 1;
    incomplete.y = 5;
    incomplete.choice = {{2, 0}};
    CHECK_THROWS_AS(sieve_interval(6, incomplete), std::invalid_argument);
}

TEST_CASE("construct q=5 under the default sweep") {
    const auto result = construct_tuple_auto(5, {1, 2, 3, 4});
    CHECK(result.tuple.k == 4);
    const auto report = verify_construction(result.tuple, result.plan, result.plan.z);
    CHECK(report.admissible);
    CHECK(report.residues_ok);
    CHECK(report.smooth_ok);
    CHECK(report.set_identity_ok);
    // residues preserved as a multiset and paired correctly
    for (std::size_t i = 0; i < result.tuple.h.size(); ++i)
        CHECK(result.tuple.h[i] % 5 == result.tuple.residues[i] % 5);
    // deterministic: same sweep, same answer
    const auto again = construct_tuple_auto(5, {1, 2, 3, 4});
    CHECK(again.tuple.h == result.tuple.h);
    CHECK(again.plan.y == result.plan.y);
    CHECK(again.plan.z == result.plan.z);
}

TEST_CASE("construct degenerate q=2 and argument errors") {
    const auto result = construct_tuple_auto(2, {1, 1});
    CHECK(result.tuple.k == 2);
    CHECK(verify_construction(result.tuple, result.plan, result.plan.z).all_ok());

    CHECK_THROWS_AS(construct_tuple_auto(5, {1, 5}), std::invalid_argument);   // gcd > 1
    CHECK_THROWS_AS(construct_tuple_auto(12, {1, 5}), std::invalid_argument);  // not squarefree
    CHECK_THROWS_AS(construct_tuple_auto(5, {3, 2}), std::invalid_argument);   // not sorted
    CHECK_THROWS_AS(construct_tuple(5, {1, 2}, 100, 50), std::invalid_argument);
}

TEST_CASE("verification negative paths") {
    const auto result = construct_tuple_auto(5, {1, 2, 3, 4});
    // +q perturbation: residues still match, the sieve identity breaks
    auto bad = result.tuple;
    bad.h[0] += bad.q;
    const auto rep = verify_construction(bad, result.plan, result.plan.z);
    CHECK(rep.residues_ok);
    CHECK(!rep.set_identity_ok);
    // an inadmissible tuple is reported with its witness
    AdmissibleTuple inadmissible;
    inadmissible.k = 3;
    inadmissible.q = 5;
    inadmissible.h = {100, 102, 104}; // 0,2,4 mod 3
    inadmissible.residues = {0, 2, 4};
    inadmissible.smooth_bound = result.tuple.smooth_bound;
    const auto rep2 = verify_construction(inadmissible, result.plan, result.plan.z);
    CHECK(!rep2.admissible);
    CHECK(*rep2.admissibility_witness == 3);
}

TEST_CASE("survivor count sanity against the Mertens heuristic") {
    // all classes greedy on the full interval: survivors stay above
    // z * prod (1 - 1/p) - pi(y)
    for (const auto& [z, y] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{
             {2000, 20}, {5000, 30}, {10000, 50}}) {
        SievePlan plan;
        plan.q = 1;
        plan.y = y;
        std::vector<bool> alive(z + 1, true);
        alive[0] = false;
        double expected = static_cast<double>(z);
        std::uint64_t classes = 0;
        for (std::uint64_t p : oracle::primes_to(y)) {
            std::vector<std::uint64_t> survivors;
            for (std::uint64_t g = 1; g <= z; ++g)
                if (alive[g]) survivors.push_back(g);
            const auto a = greedy_residue(survivors, p);
            plan.choice[p] = a;
            for (std::uint64_t g = (a == 0) ? p : a; g <= z; g += p) alive[g] = false;
            expected *= 1.0 - 1.0 / static_cast<double>(p);
            ++classes;
        }
        const auto survivors = sieve_interval(z, plan);
        CHECK(static_cast<double>(survivors.size()) >=
              expected - static_cast<double>(classes));
    }
}

TEST_CASE("tuple and plan records round trip") {
    const auto result = construct_tuple_auto(5, {1, 2, 3, 4});
    std::stringstream ts;
    write_tuple(ts, result.tuple, result.plan.z);
    std::uint64_t z = 0;
    const auto tuple = read_tuple(ts, &z);
    CHECK(z == result.plan.z);
    CHECK(tuple.h == result.tuple.h);
    CHECK(tuple.residues == result.tuple.residues);
    CHECK(tuple.q == result.tuple.q);
    CHECK(tuple.smooth_bound == result.tuple.smooth_bound);

    std::stringstream ps;
    write_plan(ps, result.plan);
    const auto plan = read_plan(ps);
    CHECK(plan.choice == result.plan.choice);
    CHECK(plan.y == result.plan.y);
    CHECK(verify_construction(tuple, plan, z).all_ok());
}

TEST_CASE("excluded prime is honored") {
    const auto result = construct_tuple_auto(5, {1, 2, 3, 4}, {13});
    CHECK(!result.plan.choice.count(13));
    CHECK(verify_construction(result.tuple, result.plan, result.plan.z).all_ok());
    CHECK_THROWS_AS(construct_tuple_auto(5, {1, 2}, {5}), std::invalid_argument);
    CHECK_THROWS_AS(construct_tuple_auto(5, {1, 2}, {10}), std::invalid_argument);
}
