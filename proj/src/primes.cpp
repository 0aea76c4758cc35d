#include "rcp/primes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "rcp/errors.hpp"

namespace rcp {

namespace {

constexpr std::size_t kSegmentEntries = std::size_t{1} << 20; // odd numbers per segment

std::uint64_t isqrt_u64(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

} // namespace

std::vector<std::uint64_t> simple_sieve(std::uint64_t n) {
    std::vector<std::uint64_t> primes;
    if (n < 2) return primes;
    primes.push_back(2);
    if (n < 3) return primes;
    // bit i <-> odd number 2i+3
    const std::uint64_t bits = (n - 1) / 2; // odds in [3, n]
    std::vector<std::uint64_t> words((bits + 63) / 64, ~std::uint64_t{0});
    auto clear_bit = [&](std::uint64_t i) { words[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); };
    auto test_bit = [&](std::uint64_t i) { return (words[i >> 6] >> (i & 63)) & 1; };
    for (std::uint64_t i = 0;; ++i) {
        const std::uint64_t p = 2 * i + 3;
        if (p * p > n) break;
        if (!test_bit(i)) continue;
        for (std::uint64_t j = (p * p - 3) / 2; j < bits; j += p) clear_bit(j);
    }
    for (std::uint64_t i = 0; i < bits; ++i)
        if (test_bit(i)) primes.push_back(2 * i + 3);
    return primes;
}

namespace {

// Sieve the odd numbers of [lo, hi) into `seg` (seg[i] <-> lo + 2i with lo odd).
void sieve_segment(std::uint64_t lo, std::uint64_t hi,
                   const std::vector<std::uint64_t>& base,
                   std::vector<std::uint64_t>& words) {
    const std::uint64_t count = (hi - lo + 1) / 2;
    words.assign((count + 63) / 64, ~std::uint64_t{0});
    for (std::uint64_t p : base) {
        if (p == 2) continue;
        if (p * p >= hi) break;
        std::uint64_t start = std::max(p * p, ((lo + p - 1) / p) * p);
        if ((start & 1) == 0) start += p;
        for (std::uint64_t v = start; v < hi; v += 2 * p) {
            const std::uint64_t i = (v - lo) / 2;
            words[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
        }
    }
}

} // namespace

void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                    const std::function<bool(std::uint64_t)>& fn) {
    if (lo > hi) throw std::invalid_argument("for_each_prime: inverted range");
    if (hi <= 2) return;
    if (lo <= 2) {
        if (!fn(2)) return;
        lo = 3;
    }
    if (lo % 2 == 0) ++lo;
    if (lo >= hi) return;

    const auto base = simple_sieve(isqrt_u64(hi - 1));
    std::vector<std::uint64_t> words;
    for (std::uint64_t seg_lo = lo; seg_lo < hi;) {
        const std::uint64_t span = std::min<std::uint64_t>(2 * kSegmentEntries, hi - seg_lo);
        const std::uint64_t seg_hi = seg_lo + span;
        sieve_segment(seg_lo, seg_hi, base, words);
        const std::uint64_t count = (seg_hi - seg_lo + 1) / 2;
        for (std::uint64_t i = 0; i < count; ++i) {
            if ((words[i >> 6] >> (i & 63)) & 1) {
                const std::uint64_t v = seg_lo + 2 * i;
                if (v == 1) continue;
                if (!fn(v)) return;
            }
        }
        seg_lo = (seg_hi % 2 == 1) ? seg_hi : seg_hi + 1; // keep segment starts odd
    }
}

PrimeRange sieve_range(std::uint64_t lo, std::uint64_t hi) {
    if (lo > hi) throw std::invalid_argument("sieve_range: lo > hi");
    PrimeRange out;
    out.lo = lo;
    out.hi = hi;
    for_each_prime(lo, hi, [&](std::uint64_t p) {
        out.primes.push_back(p);
        return true;
    });
    return out;
}

PrimeStream::PrimeStream(std::uint64_t lo) : segment_lo_(std::max<std::uint64_t>(lo, 3)), start_lo_(lo) {
    if (segment_lo_ % 2 == 0) ++segment_lo_;
    emitted_two_ = lo > 2;
    base_limit_ = 1 << 10;
    base_ = simple_sieve(base_limit_);
}

void PrimeStream::refill() {
    buffer_.clear();
    pos_ = 0;
    while (buffer_.empty()) {
        const std::uint64_t seg_hi = segment_lo_ + 2 * kSegmentEntries;
        if (base_limit_ * base_limit_ < seg_hi) {
            base_limit_ = isqrt_u64(seg_hi) + 1024;
            base_ = simple_sieve(base_limit_);
        }
        std::vector<std::uint64_t> words;
        sieve_segment(segment_lo_, seg_hi, base_, words);
        const std::uint64_t count = (seg_hi - segment_lo_ + 1) / 2;
        for (std::uint64_t i = 0; i < count; ++i) {
            if ((words[i >> 6] >> (i & 63)) & 1) {
                const std::uint64_t v = segment_lo_ + 2 * i;
                if (v > 1) buffer_.push_back(v);
            }
        }
        segment_lo_ = seg_hi + (seg_hi % 2 == 0 ? 1 : 0);
    }
}

std::uint64_t PrimeStream::next() {
    if (!emitted_two_) {
        emitted_two_ = true;
        if (start_lo_ <= 2) return 2;
    }
    if (pos_ >= buffer_.size()) refill();
    return buffer_[pos_++];
}

std::vector<std::uint64_t> primes_in_ap(std::uint64_t a, std::uint64_t q,
                                        std::uint64_t lo, std::uint64_t hi) {
    if (q == 0) throw std::invalid_argument("primes_in_ap: q must be positive");
    if (lo > hi) throw std::invalid_argument("primes_in_ap: inverted range");
    const std::uint64_t a0 = a % q;
    if (std::gcd(a0, q) != 1) {
        // the only prime in such a class is a itself, when a | q
        if (!(a > 1 && is_prime(a) && q % a == 0))
            throw std::invalid_argument("primes_in_ap: residue not coprime to modulus");
    }
    std::vector<std::uint64_t> out;
    for_each_prime(lo, hi, [&](std::uint64_t p) {
        if (p % q == a0) out.push_back(p);
        return true;
    });
    return out;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    if (n % 3 == 0) return n == 3;
    for (std::uint64_t d = 5; d * d <= n; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

std::uint64_t largest_prime_factor(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("largest_prime_factor: n must be >= 1");
    if (n == 1) return 1; // P+(1) = 1 by convention
    std::uint64_t best = 1;
    while (n % 2 == 0) {
        best = 2;
        n /= 2;
    }
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
        while (n % d == 0) {
            best = d;
            n /= d;
        }
    }
    if (n > 1) best = std::max(best, n);
    return best;
}

bool is_smooth(std::int64_t n, std::uint64_t y) {
    if (n == 0) throw std::invalid_argument("is_smooth: n must be nonzero");
    if (y < 2) throw std::invalid_argument("is_smooth: y must be >= 2");
    std::uint64_t m = n < 0 ? static_cast<std::uint64_t>(-n) : static_cast<std::uint64_t>(n);
    while (m % 2 == 0) m /= 2;
    for (std::uint64_t d = 3; d <= y && d * d <= m; d += 2) {
        while (m % d == 0) m /= d;
    }
    return m == 1 || m <= y;
}

FactorizationSummary factor_summary(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("factor_summary: n must be >= 1");
    FactorizationSummary s;
    s.n = n;
    s.is_squarefree = true;
    s.euler_phi = 1;
    s.largest_prime_factor = 1;
    std::uint64_t m = n;
    auto eat = [&](std::uint64_t p) {
        if (m % p != 0) return;
        std::uint64_t e = 0;
        std::uint64_t contrib = 1;
        while (m % p == 0) {
            m /= p;
            ++e;
            contrib = (e == 1) ? p - 1 : contrib * p;
        }
        if (e > 1) s.is_squarefree = false;
        s.euler_phi *= contrib;
        s.largest_prime_factor = std::max(s.largest_prime_factor, p);
    };
    eat(2);
    for (std::uint64_t d = 3; d * d <= m; d += 2) eat(d);
    if (m > 1) {
        s.euler_phi *= m - 1;
        s.largest_prime_factor = std::max(s.largest_prime_factor, m);
    }
    return s;
}

std::uint64_t euler_phi(std::uint64_t n) { return factor_summary(n).euler_phi; }

bool is_squarefree(std::uint64_t n) { return factor_summary(n).is_squarefree; }

Int product_tree(std::span<const std::uint64_t> factors) {
    if (factors.empty()) return Int{1};
    if (factors.size() == 1) return Int{static_cast<unsigned long>(factors[0])};
    const std::size_t mid = factors.size() / 2;
    return product_tree(factors.subspan(0, mid)) * product_tree(factors.subspan(mid));
}

double log_mpz(const Int& z) {
    long exp = 0;
    const double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

MertensProduct mertens_product(std::uint64_t x) {
    if (x < 2) throw std::invalid_argument("mertens_product: x must be >= 2");
    std::vector<std::uint64_t> ps;
    std::vector<std::uint64_t> ps_minus_1;
    for_each_prime(0, x + 1, [&](std::uint64_t p) {
        ps.push_back(p);
        ps_minus_1.push_back(p - 1);
        return true;
    });
    MertensProduct out;
    Rat r(product_tree(ps_minus_1), product_tree(ps));
    r.canonicalize();
    out.exact = r;
    constexpr double kEulerGamma = 0.57721566490153286060651209008240243104;
    out.asymptotic = std::exp(-kEulerGamma) / std::log(static_cast<double>(x));
    return out;
}

} // namespace rcp
