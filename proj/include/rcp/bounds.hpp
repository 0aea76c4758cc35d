#pragma once
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rcp/arith.hpp"

namespace rcp {

enum class FormulaId {
    shiu_dirichlet,
    small_general,
    small_simplified,
    large_general,
    large_leading,
};

std::string formula_name(FormulaId id);

// One evaluated lower bound. Purely rational formulas carry an exact value;
// formulas involving e^10 or log m carry a binary64 value and exact=false.
struct BoundReport {
    FormulaId id = FormulaId::shiu_dirichlet;
    unsigned long m = 0;
    unsigned long r = 0;       // 0 when the formula has no r
    std::uint64_t q = 0;       // 0 when only phi was supplied
    std::uint64_t phi = 0;
    Rat c;                     // 0 when the formula has no c
    bool has_c = false;

    bool applicable = true;
    std::string reason;        // machine-readable reason when applicable=false

    bool exact = true;
    Rat exact_value;
    double float_value = 0.0;

    std::vector<std::pair<std::string, std::string>> extras;

    // flat `key=value` record, one line
    std::string to_record() const;
};

// m * phi(q): the count guaranteed by constant strings plus shifting.
BoundReport shiu_dirichlet_bound(unsigned long m, std::uint64_t phi);

// 2 (1-c) m K^{-5} phi (phi-1) with K = ceil(M / floor(c(m-1)/(r-1))).
// Needs 2 <= r <= m/100 and phi >= K.
BoundReport small_general_bound(unsigned long m, unsigned long r, std::uint64_t phi,
                                const Rat& c);

// (1-c) c^5 m / (512 e^10 (log m)^10) * phi (phi-1), binary64; applicable
// when phi > 8 c^{-1} e^2 (log m)^2. Also reports the crossover against
// m*phi at the threshold 7645 e^10 (log m)^10.
BoundReport small_simplified_bound(unsigned long m, std::uint64_t phi, const Rat& c);

// ceil(m/(r-1))! * phi(phi-1)...(phi-t+1) / (M(M-1)...(M-t+1)), exact.
// Needs phi >= M(m, r).
BoundReport large_general_bound(unsigned long m, unsigned long r, std::uint64_t phi);

// Leading order in phi of the large-q bound at the recipe r = log m + 1:
// phi^t / C(M, t) with t = ceil(m/(r-1)); applicable when
// phi > 8 e^2 m log m.
BoundReport large_leading_bound(unsigned long m, std::uint64_t phi);

} // namespace rcp
