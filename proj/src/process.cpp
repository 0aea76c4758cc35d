#include "rcp/process.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "rcp/errors.hpp"

namespace rcp {

namespace {

void validate_params(const ProcessParams& p) {
    if (p.phi < 2) throw std::invalid_argument("process: phi must be >= 2");
    if (p.M_param < 1) throw std::invalid_argument("process: M_param must be >= 1");
    if (p.seg < 1) throw std::invalid_argument("process: seg must be >= 1");
    const std::uint32_t k = p.seed_length();
    if (p.variant == ProcessVariant::piecewise_constant && k < 2)
        throw std::invalid_argument("process: need at least two blocks");
    if (k > p.phi)
        throw std::invalid_argument("process: seed needs more distinct values than phi allows");
    if (p.variant == ProcessVariant::distinct_entries && p.seg > p.M_param)
        throw std::invalid_argument("process: minimum l exceeds the seed length");
}

bool is_subsequence(const GoodTuple& values, const Seed& seed) {
    std::size_t i = 0;
    for (std::uint32_t v : seed) {
        if (i < values.size() && values[i] == v) ++i;
    }
    return i == values.size();
}

} // namespace

std::uint32_t ProcessParams::seed_length() const {
    if (variant == ProcessVariant::distinct_entries) return M_param;
    return convention == BlockConvention::partial_final_block ? (M_param + seg - 1) / seg
                                                              : M_param / seg;
}

std::uint32_t ProcessParams::l_min() const {
    return variant == ProcessVariant::piecewise_constant ? 2 : seg;
}

std::uint32_t ProcessParams::l_max() const { return seed_length(); }

std::vector<Seed> initial_seeds(const ProcessParams& params) {
    validate_params(params);
    const std::uint32_t k = params.seed_length();
    std::vector<Seed> seeds;
    Seed cur;
    std::vector<bool> used(params.phi + 1, false);
    auto rec = [&](auto&& self) -> void {
        if (cur.size() == k) {
            seeds.push_back(cur);
            return;
        }
        for (std::uint32_t v = 1; v <= params.phi; ++v) {
            if (used[v]) continue;
            used[v] = true;
            cur.push_back(v);
            self(self);
            cur.pop_back();
            used[v] = false;
        }
    };
    rec(rec);
    return seeds;
}

bool valid_choice(const ProcessParams& params, const Seed& seed, const GoodTuple& values) {
    if (values.size() < params.l_min() || values.size() > params.l_max()) return false;
    return is_subsequence(values, seed);
}

bool removes(const ProcessParams& params, const GoodTuple& values, const Seed& seed) {
    if (params.variant == ProcessVariant::distinct_entries)
        return is_subsequence(values, seed);
    // piecewise: any consecutive pair of the good tuple appearing in order
    for (std::size_t j = 0; j + 1 < values.size(); ++j) {
        bool seen_first = false;
        for (std::uint32_t v : seed) {
            if (seen_first && v == values[j + 1]) return true;
            if (v == values[j]) seen_first = true;
        }
    }
    return false;
}

ProcessState simulate_process(const ProcessParams& params, const Adversary& adversary,
                              std::uint64_t seed_cap) {
    validate_params(params);
    {
        // |S1| = phi (phi-1) ... (phi-k+1) must be enumerable
        Int size = falling_factorial(Int(static_cast<unsigned long>(params.phi)),
                                     params.seed_length());
        if (size > Int(static_cast<unsigned long>(seed_cap)))
            throw resource_error("simulate_process: initial set has " + size.get_str() +
                                 " seeds, cap is " + std::to_string(seed_cap));
    }
    std::vector<Seed> survivors = initial_seeds(params);
    ProcessState state;
    state.params = params;
    state.initial_size = survivors.size();
    while (!survivors.empty()) {
        AdversaryChoice choice = adversary(survivors);
        if (choice.seed_index >= survivors.size())
            throw protocol_error("simulate_process: adversary chose a missing seed");
        if (!valid_choice(params, survivors[choice.seed_index], choice.values))
            throw protocol_error("simulate_process: adversary tuple violates the step structure");
        std::vector<Seed> next;
        next.reserve(survivors.size());
        std::uint64_t removed = 0;
        for (auto& s : survivors) {
            if (removes(params, choice.values, s))
                ++removed;
            else
                next.push_back(std::move(s));
        }
        state.history.push_back(ProcessStep{choice.seed_index, choice.values, removed});
        survivors = std::move(next);
    }
    return state;
}

namespace {

// every distinct good tuple obtainable from any seed in `survivors`
std::vector<GoodTuple> all_choices(const ProcessParams& params,
                                   const std::vector<Seed>& survivors) {
    std::set<GoodTuple> out;
    for (const auto& seed : survivors) {
        const std::uint32_t k = static_cast<std::uint32_t>(seed.size());
        for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
            const auto l = static_cast<std::uint32_t>(__builtin_popcount(mask));
            if (l < params.l_min() || l > params.l_max()) continue;
            GoodTuple values;
            for (std::uint32_t i = 0; i < k; ++i)
                if (mask & (1u << i)) values.push_back(seed[i]);
            out.insert(std::move(values));
        }
    }
    return {out.begin(), out.end()};
}

} // namespace

Adversary greedy_adversary(const ProcessParams& params) {
    return [params](const std::vector<Seed>& survivors) {
        GoodTuple best;
        std::uint64_t best_removed = 0;
        for (const auto& values : all_choices(params, survivors)) {
            std::uint64_t removed = 0;
            for (const auto& s : survivors)
                if (removes(params, values, s)) ++removed;
            if (removed > best_removed) {
                best_removed = removed;
                best = values;
            }
        }
        // locate a seed the winning tuple is drawn from
        for (std::size_t i = 0; i < survivors.size(); ++i)
            if (valid_choice(params, survivors[i], best)) return AdversaryChoice{i, best};
        throw protocol_error("greedy_adversary: no valid choice found");
    };
}

Int per_step_removal_bound(const ProcessParams& params, std::uint32_t l) {
    validate_params(params);
    if (l < params.l_min() || l > params.l_max())
        throw std::invalid_argument("per_step_removal_bound: l out of range");
    const Int phi(static_cast<unsigned long>(params.phi));
    if (params.variant == ProcessVariant::distinct_entries) {
        const std::uint32_t M = params.M_param;
        return binomial(phi - l, M - l) * factorial(M) / factorial(l);
    }
    const std::uint32_t K = params.seed_length();
    return Int(static_cast<unsigned long>(l - 1)) * binomial(Int(static_cast<unsigned long>(K)), 2) *
           binomial(phi - 2, K - 2) * factorial(K) / 2;
}

Rat process_lower_bound(const ProcessParams& params) {
    validate_params(params);
    const Int phi(static_cast<unsigned long>(params.phi));
    Rat bound;
    if (params.variant == ProcessVariant::distinct_entries) {
        const std::uint32_t M = params.M_param;
        const std::uint32_t l = params.seg;
        bound = Rat(factorial(l) * binomial(phi, M), binomial(phi - l, M - l));
    } else {
        const std::uint32_t K = params.seed_length();
        bound = Rat(2 * binomial(phi, K), binomial(phi - 2, K - 2) * int_pow(Int(static_cast<unsigned long>(K)), 3));
    }
    bound.canonicalize();
    return bound;
}

std::uint64_t min_steps_exhaustive(const ProcessParams& params, std::uint64_t state_cap) {
    validate_params(params);
    const std::vector<Seed> all = initial_seeds(params);
    const std::size_t n = all.size();
    if (n > 64) throw resource_error("min_steps_exhaustive: more than 64 seeds");

    // per distinct choice: which seeds it removes, and which seeds it can be
    // drawn from (a tuple is only playable while a source seed survives)
    std::vector<std::pair<std::uint64_t, std::uint64_t>> masks; // (removal, avail)
    {
        const auto choices = all_choices(params, all);
        masks.reserve(choices.size());
        for (const auto& values : choices) {
            std::uint64_t removal = 0, avail = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (removes(params, values, all[i])) removal |= std::uint64_t{1} << i;
                if (valid_choice(params, all[i], values)) avail |= std::uint64_t{1} << i;
            }
            masks.emplace_back(removal, avail);
        }
        std::sort(masks.begin(), masks.end());
        masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
    }

    std::unordered_map<std::uint64_t, std::uint64_t> memo;
    auto rec = [&](auto&& self, std::uint64_t state) -> std::uint64_t {
        if (state == 0) return 0;
        if (auto it = memo.find(state); it != memo.end()) return it->second;
        if (memo.size() >= state_cap)
            throw resource_error("min_steps_exhaustive: state cap exceeded");
        std::uint64_t best = ~std::uint64_t{0};
        for (const auto& [removal, avail] : masks) {
            if ((avail & state) == 0) continue;
            best = std::min(best, 1 + self(self, state & ~removal));
        }
        memo[state] = best;
        return best;
    };
    const std::uint64_t full = (n == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
    return rec(rec, full);
}

} // namespace rcp
