#pragma once
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace rcp {

using Int = mpz_class;
using Rat = mpq_class;

inline Int int_pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Int factorial(unsigned long n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline Int binomial(const Int& n, unsigned long k) {
    Int r;
    mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

// n (n-1) ... (n-k+1), k factors.
inline Int falling_factorial(const Int& n, unsigned long k) {
    Int r = 1;
    for (unsigned long i = 0; i < k; ++i) r *= n - static_cast<long>(i);
    return r;
}

// Balanced product of word-sized factors; sequential multiplication is
// quadratic in the result size, the tree is not.
Int product_tree(std::span<const std::uint64_t> factors);

// Always prints "num/den", even for integers ("0/1", "64/1").
inline std::string rat_str(const Rat& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// log of an arbitrarily large positive integer, via mantissa + exponent.
double log_mpz(const Int& z);

} // namespace rcp
