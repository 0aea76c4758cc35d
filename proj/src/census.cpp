#include "rcp/census.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "rcp/errors.hpp"

namespace rcp {

namespace {

void validate_modulus(std::uint64_t q) {
    // counts are well-defined for any modulus; squarefreeness only matters
    // for the theorems consuming them
    if (q < 2) throw std::invalid_argument("census: modulus must be > 1");
}

// Windows of m consecutive primes whose start p_n lies in [start_lo, start_hi)
// and p_n <= x. The callback receives the m window primes and the successor
// prime p_{n+m}.
template <typename Fn>
void scan_windows(std::uint64_t x, std::uint32_t m, std::uint64_t start_lo,
                  std::uint64_t start_hi, Fn&& fn) {
    PrimeStream stream(start_lo);
    std::deque<std::uint64_t> window;
    const std::uint64_t limit = std::min(x + 1, start_hi);
    while (true) {
        while (window.size() < m + 1u) window.push_back(stream.next());
        if (window.front() >= limit) break;
        fn(window, window.back());
        window.pop_front();
    }
}

} // namespace

void validate_pattern(const ResiduePattern& a) {
    validate_modulus(a.q);
    if (a.entries.empty()) throw std::invalid_argument("pattern: m must be >= 1");
    for (std::uint32_t e : a.entries) {
        if (e < 1 || e >= a.q || std::gcd<std::uint64_t>(e, a.q) != 1)
            throw std::invalid_argument("pattern: entry not a coprime residue in [1, q-1]");
    }
}

std::uint64_t encode_pattern(std::uint64_t q, const std::vector<std::uint32_t>& entries) {
    std::uint64_t key = 0;
    for (std::uint32_t e : entries) {
        if (key > (~std::uint64_t{0} - e) / q)
            throw resource_error("pattern key space exceeds 64 bits");
        key = key * q + e;
    }
    return key;
}

std::vector<std::uint32_t> decode_pattern(std::uint64_t q, std::uint32_t m, std::uint64_t key) {
    std::vector<std::uint32_t> entries(m);
    for (std::uint32_t i = m; i-- > 0;) {
        entries[i] = static_cast<std::uint32_t>(key % q);
        key /= q;
    }
    return entries;
}

std::uint64_t CensusTable::count_of(const std::vector<std::uint32_t>& entries) const {
    auto it = counts.find(encode_pattern(q, entries));
    return it == counts.end() ? 0 : it->second;
}

std::uint64_t CensusTable::total_windows() const {
    std::uint64_t s = skipped_windows;
    for (const auto& [k, v] : counts) s += v;
    return s;
}

std::uint64_t count_pattern(std::uint64_t x, const ResiduePattern& a) {
    validate_pattern(a);
    if (x < 2) return 0;
    const std::uint32_t m = static_cast<std::uint32_t>(a.entries.size());
    std::uint64_t count = 0;
    scan_windows(x, m, 0, x + 1, [&](const std::deque<std::uint64_t>& w, std::uint64_t) {
        for (std::uint32_t i = 0; i < m; ++i)
            if (w[i] % a.q != a.entries[i]) return;
        ++count;
    });
    return count;
}

std::uint64_t count_pattern_set(std::uint64_t x, std::uint64_t q,
                                const std::vector<ResiduePattern>& patterns) {
    validate_modulus(q);
    if (patterns.empty()) return 0;
    const std::size_t m = patterns.front().entries.size();
    std::vector<std::uint64_t> keys;
    for (const auto& a : patterns) {
        if (a.q != q) throw std::invalid_argument("count_pattern_set: mixed moduli");
        if (a.entries.size() != m) throw std::invalid_argument("count_pattern_set: mixed lengths");
        validate_pattern(a);
        keys.push_back(encode_pattern(q, a.entries));
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

    std::uint64_t count = 0;
    scan_windows(x, static_cast<std::uint32_t>(m), 0, x + 1,
                 [&](const std::deque<std::uint64_t>& w, std::uint64_t) {
                     std::uint64_t key = 0;
                     for (std::size_t i = 0; i < m; ++i) {
                         const std::uint64_t r = w[i] % q;
                         if (std::gcd(r, q) != 1) return;
                         key = key * q + r;
                     }
                     if (std::binary_search(keys.begin(), keys.end(), key)) ++count;
                 });
    return count;
}

namespace {

CensusTable census_chunk(std::uint64_t x, std::uint64_t q, std::uint32_t m,
                         std::uint64_t start_lo, std::uint64_t start_hi) {
    CensusTable t;
    t.q = q;
    t.m = m;
    t.x = x;
    scan_windows(x, m, start_lo, start_hi,
                 [&](const std::deque<std::uint64_t>& w, std::uint64_t) {
                     std::uint64_t key = 0;
                     bool skip = false;
                     for (std::uint32_t i = 0; i < m && !skip; ++i) {
                         const std::uint64_t r = w[i] % q;
                         if (std::gcd(r, q) != 1)
                             skip = true;
                         else
                             key = key * q + r;
                     }
                     if (skip)
                         ++t.skipped_windows;
                     else
                         ++t.counts[key];
                 });
    return t;
}

} // namespace

CensusTable census(std::uint64_t x, std::uint64_t q, std::uint32_t m, unsigned threads) {
    validate_modulus(q);
    if (m < 1) throw std::invalid_argument("census: m must be >= 1");
    if (x < 2) throw std::invalid_argument("census: x must be >= 2");
    // reject key spaces that cannot be encoded before doing any work
    std::uint64_t probe = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        if (probe > (~std::uint64_t{0}) / q)
            throw resource_error("census: pattern key space exceeds 64 bits");
        probe *= q;
    }

    if (threads <= 1 || x < 1u << 16) return census_chunk(x, q, m, 0, x + 1);

    // Range-parallel: worker i owns windows whose start lies in its slice.
    // Each worker reads past its slice end to complete boundary windows, so
    // the merged table is independent of the worker count.
    const std::uint64_t span = x / threads + 1;
    std::vector<CensusTable> parts(threads);
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) {
        const std::uint64_t lo = std::uint64_t{i} * span;
        const std::uint64_t hi = std::min(x + 1, lo + span);
        pool.emplace_back([&, i, lo, hi] { parts[i] = census_chunk(x, q, m, lo, hi); });
    }
    for (auto& th : pool) th.join();
    CensusTable out = std::move(parts.front());
    for (unsigned i = 1; i < threads; ++i) {
        out.skipped_windows += parts[i].skipped_windows;
        for (const auto& [k, v] : parts[i].counts) out.counts[k] += v;
    }
    return out;
}

std::vector<StringRun> find_strings(std::uint64_t x, std::uint64_t q,
                                    std::uint64_t a, std::uint64_t min_len) {
    validate_modulus(q);
    if (std::gcd(a % q, q) != 1)
        throw std::invalid_argument("find_strings: residue not coprime to modulus");
    if (min_len < 1) throw std::invalid_argument("find_strings: min_len must be >= 1");
    const std::uint64_t a0 = a % q;

    std::vector<StringRun> runs;
    StringRun current;
    std::uint64_t index = 0;
    for_each_prime(0, x + 1, [&](std::uint64_t p) {
        ++index;
        if (p % q == a0) {
            if (current.length == 0) {
                current.q = q;
                current.a = a0;
                current.start_index = index;
                current.first_prime = p;
            }
            ++current.length;
        } else if (current.length > 0) {
            if (current.length >= min_len) runs.push_back(current);
            current = StringRun{};
        }
        return true;
    });
    if (current.length >= min_len) runs.push_back(current);
    return runs;
}

bool verify_shift_closure(const CensusTable& table, std::uint64_t x_margin) {
    if (x_margin > table.x)
        throw std::invalid_argument("verify_shift_closure: margin exceeds census bound");
    const std::uint64_t q = table.q;
    const std::uint32_t m = table.m;
    const std::uint64_t cutoff = table.x - x_margin;
    bool ok = true;
    scan_windows(table.x, m, 0, table.x + 1,
                 [&](const std::deque<std::uint64_t>& w, std::uint64_t successor) {
                     if (!ok) return;
                     std::uint64_t key = 0;
                     for (std::uint32_t i = 0; i < m; ++i) {
                         const std::uint64_t r = w[i] % q;
                         if (std::gcd(r, q) != 1) return;
                         key = key * q + r;
                     }
                     const std::uint64_t s = successor % q;
                     if (successor > cutoff || std::gcd(s, q) != 1) return;
                     // shifted pattern: drop the first residue, append the successor's
                     std::uint64_t base = 1;
                     for (std::uint32_t i = 0; i + 1 < m; ++i) base *= q;
                     const std::uint64_t shifted = (key % base) * q + s;
                     auto it = table.counts.find(shifted);
                     if (it == table.counts.end() || it->second == 0) ok = false;
                 });
    return ok;
}

void write_census(std::ostream& os, const CensusTable& table) {
    os << "q=" << table.q << " m=" << table.m << " x=" << table.x
       << " skipped=" << table.skipped_windows << " version=1\n";
    for (const auto& [key, count] : table.counts) {
        const auto entries = decode_pattern(table.q, table.m, key);
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (i) os << ',';
            os << entries[i];
        }
        os << '\t' << count << '\n';
    }
}

std::string census_to_string(const CensusTable& table) {
    std::ostringstream os;
    write_census(os, table);
    return os.str();
}

CensusTable read_census(std::istream& is) {
    CensusTable t;
    std::string header;
    if (!std::getline(is, header)) throw std::invalid_argument("census file: missing header");
    unsigned version = 0;
    if (std::sscanf(header.c_str(), "q=%llu m=%u x=%llu skipped=%llu version=%u",
                    reinterpret_cast<unsigned long long*>(&t.q), &t.m,
                    reinterpret_cast<unsigned long long*>(&t.x),
                    reinterpret_cast<unsigned long long*>(&t.skipped_windows), &version) != 5 ||
        version != 1)
        throw std::invalid_argument("census file: bad header: " + header);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos) throw std::invalid_argument("census file: bad line: " + line);
        std::vector<std::uint32_t> entries;
        std::stringstream fields(line.substr(0, tab));
        std::string field;
        while (std::getline(fields, field, ',')) entries.push_back(std::stoul(field));
        if (entries.size() != t.m) throw std::invalid_argument("census file: wrong arity: " + line);
        t.counts[encode_pattern(t.q, entries)] = std::stoull(line.substr(tab + 1));
    }
    return t;
}

} // namespace rcp
