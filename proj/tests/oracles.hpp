// Independent naive oracles for the test suite. Everything here must stay
// implementation-free: trial division only, direct window scans, its own
// serializer. Deliberately slow and obvious.
#pragma once
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

namespace oracle {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// all primes <= limit, by trial division
inline std::vector<std::uint64_t> primes_to(std::uint64_t limit) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = 2; n <= limit; ++n)
        if (is_prime(n)) out.push_back(n);
    return out;
}

struct Census {
    std::uint64_t q = 0;
    std::uint32_t m = 0;
    std::uint64_t x = 0;
    std::map<std::vector<std::uint32_t>, std::uint64_t> counts;
    std::uint64_t skipped = 0;
};

// direct window scan over a precomputed prime list; the list must extend at
// least m-1 primes beyond x
inline Census census(const std::vector<std::uint64_t>& primes, std::uint64_t x, std::uint64_t q,
                     std::uint32_t m) {
    Census c;
    c.q = q;
    c.m = m;
    c.x = x;
    for (std::size_t n = 0; n < primes.size(); ++n) {
        if (primes[n] > x) break;
        std::vector<std::uint32_t> pattern;
        bool skip = false;
        for (std::uint32_t i = 0; i < m; ++i) {
            const std::uint64_t p = primes.at(n + i);
            const std::uint64_t r = p % q;
            if (std::gcd(r, q) != 1) {
                skip = true;
                break;
            }
            pattern.push_back(static_cast<std::uint32_t>(r));
        }
        if (skip)
            ++c.skipped;
        else
            ++c.counts[pattern];
    }
    return c;
}

// the census file format, written independently of the implementation
inline std::string to_census_format(const Census& c) {
    std::ostringstream os;
    os << "q=" << c.q << " m=" << c.m << " x=" << c.x << " skipped=" << c.skipped
       << " version=1\n";
    for (const auto& [pattern, count] : c.counts) {
        for (std::size_t i = 0; i < pattern.size(); ++i) {
            if (i) os << ',';
            os << pattern[i];
        }
        os << '\t' << count << '\n';
    }
    return os.str();
}

inline std::uint64_t count_pattern(const std::vector<std::uint64_t>& primes, std::uint64_t x,
                                   std::uint64_t q, const std::vector<std::uint32_t>& pattern) {
    std::uint64_t count = 0;
    for (std::size_t n = 0; n < primes.size(); ++n) {
        if (primes[n] > x) break;
        bool match = true;
        for (std::size_t i = 0; i < pattern.size() && match; ++i)
            if (primes.at(n + i) % q != pattern[i]) match = false;
        if (match) ++count;
    }
    return count;
}

} // namespace oracle
