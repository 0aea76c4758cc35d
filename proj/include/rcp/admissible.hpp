#pragma once
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rcp/primes.hpp"

namespace rcp {

// Admissible k-tuple with prescribed residues mod q and y-smooth pairwise
// differences.
struct AdmissibleTuple {
    std::uint32_t k = 0;
    std::vector<std::uint64_t> h;        // strictly increasing
    std::uint64_t q = 0;
    std::vector<std::uint64_t> residues; // h[i] = residues[i] (mod q)
    std::uint64_t smooth_bound = 0;      // y
};

// One residue class per sieving prime p <= y (p not excluded); the class
// atilde_p is removed from (0, z]. Primes dividing q always get class 0.
struct SievePlan {
    std::uint64_t q = 0;
    std::uint64_t y = 0;
    std::uint64_t z = 0;
    std::uint64_t y1 = 0; // greedy phase upper cutoff
    std::uint64_t y2 = 0; // zero-class phase upper cutoff
    std::vector<std::uint64_t> excluded;          // the set Z, at most one prime
    std::map<std::uint64_t, std::uint64_t> choice; // p -> atilde_p in [0, p)
};

struct AdmissibilityResult {
    bool admissible = false;
    std::optional<std::uint64_t> witness; // smallest covering prime, when not
};

// Definition check over primes p <= k; p > k can never be covered by k
// values. `check_all_up_to` widens the range (used to validate the shortcut).
AdmissibilityResult is_admissible(const std::vector<std::uint64_t>& h,
                                  std::uint64_t check_all_up_to = 0);

// A residue class mod p hitting at least ceil(|S|/p) elements of S;
// ties broken by the smallest residue.
std::uint64_t greedy_residue(const std::vector<std::uint64_t>& S, std::uint64_t p);

// Survivors of (0, z] after removing every chosen class. The plan must carry
// a choice for every prime p <= y outside the excluded set.
std::vector<std::uint64_t> sieve_interval(std::uint64_t z, const SievePlan& plan);

struct ConstructionResult {
    AdmissibleTuple tuple;
    SievePlan plan;
};

// Builds the tuple by the four-phase sieve: zero classes for mid primes in
// (y1, y2], greedy classes for small primes <= y1 (class 0 forced when
// p | q), target primes in (y, z] picked by residue combination, and a
// cleanup phase assigning the remaining primes in (y2, y] classes that
// remove every unwanted survivor. Throws construction_error naming the
// failing phase; a returned tuple always passes verify_construction.
ConstructionResult construct_tuple(std::uint64_t q, const std::vector<std::uint64_t>& residues,
                                   std::uint64_t y, std::uint64_t z,
                                   const std::vector<std::uint64_t>& excluded = {},
                                   std::uint64_t y1_override = 0,
                                   std::uint64_t y2_override = 0);

struct SweepSettings {
    std::uint64_t y_start = 0;  // 0: derived from q
    std::uint64_t y_step = 50;
    std::uint64_t y_cap = 4000;
    std::uint64_t z_step = 150;
    std::uint64_t z_span_cap = 3000;
};

// Outward sweep over (y, z), first success wins (grid order is lexicographic
// in (y, z), so the accepted pair is the smallest successful grid point).
ConstructionResult construct_tuple_auto(std::uint64_t q,
                                        const std::vector<std::uint64_t>& residues,
                                        const std::vector<std::uint64_t>& excluded = {},
                                        const SweepSettings& sweep = {});

struct VerificationReport {
    bool admissible = false;
    std::optional<std::uint64_t> admissibility_witness;
    bool residues_ok = false;
    bool smooth_ok = false;
    bool set_identity_ok = false;
    bool all_ok() const { return admissible && residues_ok && smooth_ok && set_identity_ok; }
};

// Independent recheck of the four constructed properties.
VerificationReport verify_construction(const AdmissibleTuple& tuple, const SievePlan& plan,
                                       std::uint64_t z);

// Tuple record: "k q y z" header, then one "h_i r_i" line per element.
void write_tuple(std::ostream& os, const AdmissibleTuple& tuple, std::uint64_t z);
AdmissibleTuple read_tuple(std::istream& is, std::uint64_t* z_out = nullptr);

// Side record for the plan: header "q y z y1 y2", "Z p1 p2 ...", then
// "p atilde" lines.
void write_plan(std::ostream& os, const SievePlan& plan);
SievePlan read_plan(std::istream& is);

} // namespace rcp
