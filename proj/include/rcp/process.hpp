#pragma once
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "rcp/arith.hpp"

namespace rcp {

// The two greedy removal processes used to count attainable patterns.
// Seeds are represented by their tuples of distinct values over an abstract
// alphabet {1..phi}; block sizes never enter the removal predicates.
enum class ProcessVariant {
    piecewise_constant, // removal keyed on consecutive pairs of the good tuple
    distinct_entries,   // removal keyed on the good tuple as a subsequence
};

// What to do with a final partial block when seg does not divide M_param.
enum class BlockConvention {
    partial_final_block, // K = ceil(M/seg); the last block is shorter
    full_blocks_only,    // K = floor(M/seg); the remainder is dropped
};

struct ProcessParams {
    ProcessVariant variant = ProcessVariant::distinct_entries;
    std::uint32_t phi = 0;     // alphabet size
    std::uint32_t M_param = 0; // seed tuple length
    std::uint32_t seg = 0;     // block size (piecewise) / minimum l (distinct)
    BlockConvention convention = BlockConvention::partial_final_block;

    // number of distinct values a seed carries
    std::uint32_t seed_length() const;
    // allowed range for the number of distinct values of a good tuple
    std::uint32_t l_min() const;
    std::uint32_t l_max() const;
};

using Seed = std::vector<std::uint32_t>;      // distinct values, one per block
using GoodTuple = std::vector<std::uint32_t>; // distinct values of a good tuple

// All ordered tuples of seed_length() distinct values from {1..phi},
// lexicographic.
std::vector<Seed> initial_seeds(const ProcessParams& params);

// Whether `values` may be produced from `seed` in one process step:
// a subsequence of the seed's values with l in [l_min, l_max].
bool valid_choice(const ProcessParams& params, const Seed& seed, const GoodTuple& values);

// Whether one removal step with `values` removes `seed`.
bool removes(const ProcessParams& params, const GoodTuple& values, const Seed& seed);

struct ProcessStep {
    std::size_t seed_index = 0; // index into the surviving set at choice time
    GoodTuple values;
    std::uint64_t removed = 0;
};

struct ProcessState {
    ProcessParams params;
    std::uint64_t initial_size = 0;
    std::vector<ProcessStep> history;
};

// The adversary sees the surviving seeds and picks (seed index, good tuple).
struct AdversaryChoice {
    std::size_t seed_index = 0;
    GoodTuple values;
};
using Adversary = std::function<AdversaryChoice(const std::vector<Seed>&)>;

// Runs the process to exhaustion. Throws protocol_error on a structurally
// invalid adversary choice. Deterministic for a deterministic adversary.
ProcessState simulate_process(const ProcessParams& params, const Adversary& adversary,
                              std::uint64_t seed_cap = 1u << 20);

// Removal-maximizing adversary, ties by lexicographically smallest tuple.
Adversary greedy_adversary(const ProcessParams& params);

// Paper per-step removal caps, exact:
//   piecewise_constant: (l-1) C(K,2) C(phi-2, K-2) K!/2
//   distinct_entries:   C(phi-l, M-l) M!/l!
Int per_step_removal_bound(const ProcessParams& params, std::uint32_t l);

// Step-count lower bound of the corresponding corollary at these parameters:
//   piecewise_constant: 2 C(phi,K) / (C(phi-2,K-2) K^3)
//   distinct_entries:   l_min! C(phi,M) / C(phi-l_min, M-l_min)
Rat process_lower_bound(const ProcessParams& params);

// Exact minimum number of steps over ALL adversary strategies, by exhaustive
// search with memoized states. Throws resource_error past `state_cap`.
std::uint64_t min_steps_exhaustive(const ProcessParams& params, std::uint64_t state_cap);

} // namespace rcp
