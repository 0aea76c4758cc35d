#pragma once
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "rcp/primes.hpp"

namespace rcp {

// An m-tuple of residues mod q, every entry coprime to q.
struct ResiduePattern {
    std::uint64_t q = 0;
    std::vector<std::uint32_t> entries;
};

void validate_pattern(const ResiduePattern& a);

// Patterns are stored under their base-q integer encoding (first entry most
// significant), which is compact and sorts lexicographically.
std::uint64_t encode_pattern(std::uint64_t q, const std::vector<std::uint32_t>& entries);
std::vector<std::uint32_t> decode_pattern(std::uint64_t q, std::uint32_t m, std::uint64_t key);

// Exact counts of every length-m residue pattern among consecutive primes
// with window start p_n <= x. Windows containing a prime divisor of q are
// tallied separately so that
//   sum(counts) + skipped_windows == #{ n : p_n <= x }.
struct CensusTable {
    std::uint64_t q = 0;
    std::uint32_t m = 0;
    std::uint64_t x = 0;
    std::map<std::uint64_t, std::uint64_t> counts; // encoded pattern -> count
    std::uint64_t skipped_windows = 0;

    std::uint64_t count_of(const std::vector<std::uint32_t>& entries) const;
    std::uint64_t total_windows() const;
};

// Maximal run of consecutive primes, all = a (mod q), among primes <= x.
struct StringRun {
    std::uint64_t q = 0;
    std::uint64_t a = 0;
    std::uint64_t start_index = 0; // 1-based prime index n of the first prime
    std::uint64_t length = 0;
    std::uint64_t first_prime = 0;
};

std::uint64_t count_pattern(std::uint64_t x, const ResiduePattern& a);

// Sum of count_pattern over a set of disjoint patterns sharing (q, m).
std::uint64_t count_pattern_set(std::uint64_t x, std::uint64_t q,
                                const std::vector<ResiduePattern>& patterns);

CensusTable census(std::uint64_t x, std::uint64_t q, std::uint32_t m,
                   unsigned threads = 1);

std::vector<StringRun> find_strings(std::uint64_t x, std::uint64_t q,
                                    std::uint64_t a, std::uint64_t min_len);

// Self-check of the shifting closure: every witnessed pattern whose successor
// prime p_{n+m} <= x - x_margin is coprime to q must have its shifted pattern
// present in the table. Holds by construction on an honest census.
bool verify_shift_closure(const CensusTable& table, std::uint64_t x_margin);

// Census file format, version 1:
//   q=<q> m=<m> x=<x> skipped=<s> version=1
//   a1,a2,...,am<TAB>count        (patterns sorted lexicographically)
void write_census(std::ostream& os, const CensusTable& table);
std::string census_to_string(const CensusTable& table);
CensusTable read_census(std::istream& is);

} // namespace rcp
