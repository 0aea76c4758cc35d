#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "rcp/census.hpp"
#include "rcp/errors.hpp"

using namespace rcp;

TEST_CASE("count_pattern examples") {
    CHECK(count_pattern(100, ResiduePattern{4, {1, 1}}) == 4);
    CHECK(count_pattern(10, ResiduePattern{3, {1}}) == 1);
    CHECK(count_pattern(100, ResiduePattern{2, {1, 1}}) == 24);
    CHECK_THROWS_AS(count_pattern(100, ResiduePattern{4, {2, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(count_pattern(100, ResiduePattern{1, {1}}), std::invalid_argument);
}

TEST_CASE("count_pattern_set additivity and completeness") {
    const std::vector<ResiduePattern> pair = {{4, {1, 1}}, {4, {3, 3}}};
    CHECK(count_pattern_set(100, 4, pair) ==
          count_pattern(100, pair[0]) + count_pattern(100, pair[1]));
    CHECK(count_pattern_set(100, 4, {}) == 0);
    const std::vector<ResiduePattern> all = {
        {4, {1, 1}}, {4, {1, 3}}, {4, {3, 1}}, {4, {3, 3}}};
    CHECK(count_pattern_set(100, 4, all) == 24);
    CHECK_THROWS_AS(count_pattern_set(100, 4, {{4, {1}}, {4, {1, 3}}}), std::invalid_argument);
    CHECK_THROWS_AS(count_pattern_set(100, 4, {{4, {1, 1}}, {3, {1, 2}}}), std::invalid_argument);
}

TEST_CASE("census examples") {
    const auto t1 = census(100, 4, 1);
    CHECK(t1.count_of({1}) == 11);
    CHECK(t1.count_of({3}) == 13);
    CHECK(t1.skipped_windows == 1);

    const auto t2 = census(10, 3, 1);
    CHECK(t2.count_of({1}) == 1);
    CHECK(t2.count_of({2}) == 2);
    CHECK(t2.skipped_windows == 1);

    const auto t3 = census(2, 5, 1);
    CHECK(t3.count_of({2}) == 1);
    CHECK(t3.skipped_windows == 0);
    CHECK(t3.counts.size() == 1);
}

TEST_CASE("census equals the naive oracle") {
    const auto primes = oracle::primes_to(10000 + 200);
    for (std::uint64_t q : {3ull, 4ull, 30ull}) {
        for (std::uint32_t m : {1u, 2u, 3u}) {
            const auto expected = oracle::census(primes, 10000, q, m);
            const auto got = census(10000, q, m);
            CHECK(census_to_string(got) == oracle::to_census_format(expected));
        }
    }
}

TEST_CASE("census completeness identity") {
    const auto primes = oracle::primes_to(5200);
    std::uint64_t pi_x = 0;
    for (std::uint64_t p : primes)
        if (p <= 5000) ++pi_x;
    for (std::uint64_t q : {4ull, 15ull}) {
        for (std::uint32_t m : {1u, 2u, 4u}) {
            const auto t = census(5000, q, m);
            CHECK(t.total_windows() == pi_x);
        }
    }
}

TEST_CASE("census determinism across thread counts") {
    const auto base = census_to_string(census(100000, 15, 2, 1));
    CHECK(base == census_to_string(census(100000, 15, 2, 2)));
    CHECK(base == census_to_string(census(100000, 15, 2, 4)));
}

TEST_CASE("count monotone in x, nesting in m") {
    std::uint64_t prev = 0;
    for (std::uint64_t x : {10ull, 100ull, 1000ull, 10000ull}) {
        const auto c = count_pattern(x, ResiduePattern{4, {1, 1}});
        CHECK(c >= prev);
        prev = c;
    }
    CHECK(count_pattern(10000, ResiduePattern{4, {1, 1, 1}}) <=
          count_pattern(10000, ResiduePattern{4, {1, 1}}));
}

TEST_CASE("find_strings") {
    const auto runs = find_strings(100, 4, 1, 2);
    REQUIRE(runs.size() == 2);
    CHECK(runs[0].first_prime == 13);
    CHECK(runs[0].length == 2);
    CHECK(runs[1].first_prime == 89);
    CHECK(runs[1].length >= 2);

    CHECK(find_strings(100, 4, 1, 10).empty());

    const auto single = find_strings(3, 3, 2, 1);
    REQUIRE(!single.empty());
    CHECK(single.front().first_prime == 2);
    CHECK(single.front().length == 1);
    CHECK(single.front().start_index == 1);
}

TEST_CASE("shift closure") {
    CHECK(verify_shift_closure(census(100000, 4, 2), 100));
    CHECK(verify_shift_closure(census(100000, 3, 3), 100));
    auto corrupted = census(100000, 4, 2);
    corrupted.counts.begin()->second = 0;
    CHECK(!verify_shift_closure(corrupted, 100));
}

TEST_CASE("census file round trip and golden bytes") {
    const auto t = census(10, 3, 1);
    CHECK(census_to_string(t) == "q=3 m=1 x=10 skipped=1 version=1\n1\t1\n2\t2\n");
    std::stringstream ss(census_to_string(census(1000, 15, 2)));
    const auto back = read_census(ss);
    CHECK(census_to_string(back) == census_to_string(census(1000, 15, 2)));
}

TEST_CASE("census key-space guard") {
    CHECK_THROWS_AS(census(100, 1000003, 4), resource_error);
}
