#pragma once
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "rcp/arith.hpp"

namespace rcp {

// Primes in [lo, hi), ascending.
struct PrimeRange {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    std::vector<std::uint64_t> primes;
};

struct FactorizationSummary {
    std::uint64_t n = 0;
    std::uint64_t largest_prime_factor = 0;
    bool is_squarefree = false;
    std::uint64_t euler_phi = 0;
};

// Simple odd-packed sieve, primes <= n.
std::vector<std::uint64_t> simple_sieve(std::uint64_t n);

// Segmented sieve over [lo, hi); segments are 2^20 odd entries, bit packed.
// The callback sees primes in ascending order; return false to stop early.
void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                    const std::function<bool(std::uint64_t)>& fn);

PrimeRange sieve_range(std::uint64_t lo, std::uint64_t hi);

// Incremental ascending prime generator starting at the first prime >= lo.
// Grows its base-prime table on demand, so there is no upper bound to fix
// in advance.
class PrimeStream {
public:
    explicit PrimeStream(std::uint64_t lo = 0);
    std::uint64_t next();

private:
    void refill();

    std::uint64_t segment_lo_;           // first value of the next segment
    std::vector<std::uint64_t> base_;    // base primes, grown as needed
    std::uint64_t base_limit_ = 0;
    std::vector<std::uint64_t> buffer_;  // primes of the current segment
    std::size_t pos_ = 0;
    bool emitted_two_ = false;
    std::uint64_t start_lo_;
};

// Primes p in [lo, hi) with p = a (mod q). Requires gcd(a, q) = 1 unless a
// itself is a prime divisor of q (then p = a is the only possible match).
std::vector<std::uint64_t> primes_in_ap(std::uint64_t a, std::uint64_t q,
                                        std::uint64_t lo, std::uint64_t hi);

bool is_prime(std::uint64_t n);

// P+(n); returns 1 for n = 1 by convention.
std::uint64_t largest_prime_factor(std::uint64_t n);

// true iff P+(|n|) <= y (|n| = 1 counts as smooth). n must be nonzero.
bool is_smooth(std::int64_t n, std::uint64_t y);

std::uint64_t euler_phi(std::uint64_t n);
bool is_squarefree(std::uint64_t n);
FactorizationSummary factor_summary(std::uint64_t n);

// prod_{p <= x} (1 - 1/p) exactly, plus the asymptotic comparison value
// e^{-gamma} / log x in binary64.
struct MertensProduct {
    Rat exact;
    double asymptotic = 0.0;
};
MertensProduct mertens_product(std::uint64_t x);

} // namespace rcp
