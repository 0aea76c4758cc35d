#pragma once
#include <cstdint>
#include <functional>
#include <vector>

#include "rcp/arith.hpp"
#include "rcp/census.hpp"

namespace rcp {

// Family-size threshold M(m, r): the smallest integer M with
//   M^(r-1) * r!  >=  2^(3r-2) * (r-1)^(2r-1) * m^(r-1) * (m(r-1) + r).
// This integer characterization is exactly the ceiling in the defining
// formula; it is evaluated by integer root bracketing, never through
// floating point (the bound is tight at e.g. m=2, r=2).
Int min_family_size(unsigned long m, unsigned long r);

struct FamilyParams {
    unsigned long m = 0;
    unsigned long r = 0;
    Int M;
};
FamilyParams family_params(unsigned long m, unsigned long r);

// Non-decreasing maps j : {1..m} -> {1..M} with no r consecutive equal
// values (every run of equal values has length <= r-1).
using MonotoneMap = std::vector<std::uint32_t>;

// |J_r(m, M)| via the run decomposition: sum over l of
// C(M, l) * #{compositions of m into l parts, each part in [1, r-1]}.
Int count_monotone_maps(unsigned long m, unsigned long M, unsigned long r);

// All maps in lexicographic order. Throws resource_error (with the exact
// count in the message) when the family is larger than `cap`.
std::vector<MonotoneMap> enumerate_monotone_maps(unsigned long m, unsigned long M,
                                                 unsigned long r,
                                                 std::uint64_t cap = 1u << 20);

// The pattern family A = { (a_{j(1)}, ..., a_{j(m)}) : j in J_r(m, M) },
// deduplicated; `a` supplies the M seed residues (duplicates allowed).
std::vector<ResiduePattern> pattern_family(std::uint64_t q,
                                           const std::vector<std::uint32_t>& a,
                                           unsigned long m, unsigned long r,
                                           std::uint64_t cap = 1u << 20);

// The bracket that must be positive for the sieve sum to detect clusters:
//   m(r-1) - 4^(r-1) (r-1)^(r-1) (m(r-1)+r) * 2^r (r-1)^r m^r / (r! M^(r-1)).
// Nonnegative exactly when M >= min_family_size(m, r).
Rat positivity_margin(unsigned long m, unsigned long r, const Int& M);

// Exact check of the inequality chain step
//   M * C(k/M, r) * (2(r-1)m / k)^r  <=  2^r (r-1)^r m^r / (r! M^(r-1))
// for k a positive multiple of M with k/M >= r.
bool binomial_chain_check(unsigned long m, unsigned long r, const Int& M, const Int& k);

// Smallest integer t with  t(r-1) > m(r-1)(s+1); always equals m*s + m + 1
// (asserted), the cluster-count threshold forced by a positive sieve sum.
std::uint64_t counting_step_check(unsigned long m, unsigned long r, unsigned long s);

// Appends a residue to a pattern; returns the extended (m+1)-tuple and its
// length-m suffix, the two windows produced by one shift.
struct ShiftedPattern {
    ResiduePattern extended;
    ResiduePattern suffix;
};
ShiftedPattern shift_extend(const ResiduePattern& pattern, std::uint32_t a_next);

} // namespace rcp
