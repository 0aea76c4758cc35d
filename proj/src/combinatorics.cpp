#include "rcp/combinatorics.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <set>
#include <stdexcept>

#include "rcp/errors.hpp"

namespace rcp {

Int min_family_size(unsigned long m, unsigned long r) {
    if (m < 1) throw std::invalid_argument("min_family_size: m must be >= 1");
    if (r < 2) throw std::invalid_argument("min_family_size: r must be >= 2");
    // rhs = 2^(3r-2) (r-1)^(2r-1) m^(r-1) (m(r-1)+r)
    Int rhs = int_pow(2, 3 * r - 2) * int_pow(Int(static_cast<unsigned long>(r - 1)), 2 * r - 1) *
              int_pow(Int(m), r - 1) * Int(m * (r - 1) + r);
    // M^(r-1) >= rhs / r!  <=>  M^(r-1) >= ceil(rhs / r!)
    Int q;
    const Int rfac = factorial(r);
    mpz_cdiv_q(q.get_mpz_t(), rhs.get_mpz_t(), rfac.get_mpz_t());
    Int root;
    mpz_root(root.get_mpz_t(), q.get_mpz_t(), r - 1);
    Int M = (int_pow(root, r - 1) >= q) ? root : root + 1;
    assert(int_pow(M, r - 1) * factorial(r) >= rhs);
    assert(M <= 1 || int_pow(M - 1, r - 1) * factorial(r) < rhs);
    return M;
}

FamilyParams family_params(unsigned long m, unsigned long r) {
    return FamilyParams{m, r, min_family_size(m, r)};
}

Int count_monotone_maps(unsigned long m, unsigned long M, unsigned long r) {
    if (m < 1 || M < 1) throw std::invalid_argument("count_monotone_maps: m, M must be >= 1");
    if (r < 2) throw std::invalid_argument("count_monotone_maps: r must be >= 2");
    // comp[l][s]: compositions of s into l parts, each in [1, r-1]
    const unsigned long lmax = std::min(m, M);
    std::vector<std::vector<Int>> comp(lmax + 1, std::vector<Int>(m + 1, Int(0)));
    comp[0][0] = 1;
    for (unsigned long l = 1; l <= lmax; ++l)
        for (unsigned long s = 1; s <= m; ++s)
            for (unsigned long d = 1; d <= std::min<unsigned long>(r - 1, s); ++d)
                comp[l][s] += comp[l - 1][s - d];
    Int total = 0;
    for (unsigned long l = 1; l <= lmax; ++l) total += binomial(Int(M), l) * comp[l][m];
    return total;
}

std::vector<MonotoneMap> enumerate_monotone_maps(unsigned long m, unsigned long M,
                                                 unsigned long r, std::uint64_t cap) {
    const Int total = count_monotone_maps(m, M, r);
    if (total > Int(static_cast<unsigned long>(cap)))
        throw resource_error("enumerate_monotone_maps: family has " + total.get_str() +
                             " members, cap is " + std::to_string(cap));
    std::vector<MonotoneMap> out;
    MonotoneMap cur(m);
    // depth-first in lexicographic order, tracking the current run length
    auto rec = [&](auto&& self, unsigned long pos, std::uint32_t prev, unsigned long run) -> void {
        if (pos == m) {
            out.push_back(cur);
            return;
        }
        for (std::uint32_t v = (pos == 0 ? 1 : prev); v <= M; ++v) {
            const unsigned long next_run = (pos > 0 && v == prev) ? run + 1 : 1;
            if (next_run > r - 1) continue;
            cur[pos] = v;
            self(self, pos + 1, v, next_run);
        }
    };
    rec(rec, 0, 0, 0);
    return out;
}

std::vector<ResiduePattern> pattern_family(std::uint64_t q,
                                           const std::vector<std::uint32_t>& a,
                                           unsigned long m, unsigned long r,
                                           std::uint64_t cap) {
    if (a.empty()) throw std::invalid_argument("pattern_family: need at least one residue");
    for (std::uint32_t v : a)
        if (std::gcd<std::uint64_t>(v % q, q) != 1)
            throw std::invalid_argument("pattern_family: residue not coprime to modulus");
    const auto maps = enumerate_monotone_maps(m, a.size(), r, cap);
    std::set<std::vector<std::uint32_t>> dedup;
    for (const auto& j : maps) {
        std::vector<std::uint32_t> tuple(m);
        for (unsigned long i = 0; i < m; ++i) tuple[i] = a[j[i] - 1] % q;
        dedup.insert(std::move(tuple));
    }
    std::vector<ResiduePattern> out;
    out.reserve(dedup.size());
    for (const auto& t : dedup) out.push_back(ResiduePattern{q, t});
    return out;
}

Rat positivity_margin(unsigned long m, unsigned long r, const Int& M) {
    if (m < 1) throw std::invalid_argument("positivity_margin: m must be >= 1");
    if (r < 2) throw std::invalid_argument("positivity_margin: r must be >= 2");
    if (M < 1) throw std::invalid_argument("positivity_margin: M must be >= 1");
    const Int r1(static_cast<unsigned long>(r - 1));
    Rat lead(Int(m) * r1);
    Int num = int_pow(4, r - 1) * int_pow(r1, r - 1) * Int(m * (r - 1) + r) * int_pow(2, r) *
              int_pow(r1, r) * int_pow(Int(m), r);
    Rat tail(num, factorial(r) * int_pow(M, r - 1));
    tail.canonicalize();
    return lead - tail;
}

bool binomial_chain_check(unsigned long m, unsigned long r, const Int& M, const Int& k) {
    if (r < 2) throw std::invalid_argument("binomial_chain_check: r must be >= 2");
    if (k <= 0 || k % M != 0)
        throw std::invalid_argument("binomial_chain_check: k must be a positive multiple of M");
    Int ratio = k / M;
    if (ratio < static_cast<long>(r))
        throw std::invalid_argument("binomial_chain_check: k/M must be >= r");
    // lhs = M * C(k/M, r) * (2(r-1)m / k)^r
    Rat lhs(M * binomial(ratio, r) * int_pow(Int(2 * (r - 1) * m), r), int_pow(k, r));
    lhs.canonicalize();
    Rat rhs(int_pow(2, r) * int_pow(Int(static_cast<unsigned long>(r - 1)), r) * int_pow(Int(m), r),
            factorial(r) * int_pow(M, r - 1));
    rhs.canonicalize();
    return lhs <= rhs;
}

std::uint64_t counting_step_check(unsigned long m, unsigned long r, unsigned long s) {
    if (m < 1) throw std::invalid_argument("counting_step_check: m must be >= 1");
    if (r < 2) throw std::invalid_argument("counting_step_check: r must be >= 2");
    // smallest t with -m(r-1)s - m(r-1) + t(r-1) > 0
    std::uint64_t t = 0;
    while (t * (r - 1) <= std::uint64_t{m} * (r - 1) * s + std::uint64_t{m} * (r - 1)) ++t;
    assert(t == std::uint64_t{m} * s + m + 1);
    return t;
}

ShiftedPattern shift_extend(const ResiduePattern& pattern, std::uint32_t a_next) {
    validate_pattern(pattern);
    if (std::gcd<std::uint64_t>(a_next % pattern.q, pattern.q) != 1)
        throw std::invalid_argument("shift_extend: appended residue not coprime to modulus");
    ShiftedPattern out;
    out.extended.q = pattern.q;
    out.extended.entries = pattern.entries;
    out.extended.entries.push_back(a_next % pattern.q);
    out.suffix.q = pattern.q;
    out.suffix.entries.assign(out.extended.entries.begin() + 1, out.extended.entries.end());
    return out;
}

} // namespace rcp
