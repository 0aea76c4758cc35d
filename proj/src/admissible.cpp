#include "rcp/admissible.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "rcp/errors.hpp"

namespace rcp {

AdmissibilityResult is_admissible(const std::vector<std::uint64_t>& h,
                                  std::uint64_t check_all_up_to) {
    if (h.empty()) throw std::invalid_argument("is_admissible: tuple must be nonempty");
    {
        std::set<std::uint64_t> uniq(h.begin(), h.end());
        if (uniq.size() != h.size())
            throw std::invalid_argument("is_admissible: tuple entries must be distinct");
    }
    const std::uint64_t limit = std::max<std::uint64_t>(h.size(), check_all_up_to);
    AdmissibilityResult res;
    res.admissible = true;
    for_each_prime(0, limit + 1, [&](std::uint64_t p) {
        std::vector<bool> hit(p, false);
        std::uint64_t distinct = 0;
        for (std::uint64_t v : h) {
            const std::uint64_t r = v % p;
            if (!hit[r]) {
                hit[r] = true;
                ++distinct;
            }
        }
        if (distinct == p) {
            res.admissible = false;
            res.witness = p;
            return false;
        }
        return true;
    });
    return res;
}

std::uint64_t greedy_residue(const std::vector<std::uint64_t>& S, std::uint64_t p) {
    if (S.empty()) throw std::invalid_argument("greedy_residue: set must be nonempty");
    if (p < 2) throw std::invalid_argument("greedy_residue: p must be >= 2");
    std::vector<std::uint64_t> hits(p, 0);
    for (std::uint64_t g : S) ++hits[g % p];
    std::uint64_t best = 0;
    for (std::uint64_t r = 1; r < p; ++r)
        if (hits[r] > hits[best]) best = r;
    return best;
}

namespace {

void remove_class(std::vector<bool>& alive, std::uint64_t z, std::uint64_t p, std::uint64_t a) {
    std::uint64_t g = (a == 0) ? p : a;
    for (; g <= z; g += p) alive[g] = false;
}

std::vector<std::uint64_t> survivors_of(const std::vector<bool>& alive) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t g = 1; g < alive.size(); ++g)
        if (alive[g]) out.push_back(g);
    return out;
}

} // namespace

std::vector<std::uint64_t> sieve_interval(std::uint64_t z, const SievePlan& plan) {
    if (z < 1) throw std::invalid_argument("sieve_interval: z must be >= 1");
    for_each_prime(0, plan.y + 1, [&](std::uint64_t p) {
        if (std::find(plan.excluded.begin(), plan.excluded.end(), p) != plan.excluded.end())
            return true;
        if (!plan.choice.count(p))
            throw std::invalid_argument("sieve_interval: plan lacks a class for prime " +
                                        std::to_string(p));
        return true;
    });
    std::vector<bool> alive(z + 1, true);
    alive[0] = false;
    for (const auto& [p, a] : plan.choice) remove_class(alive, z, p, a);
    return survivors_of(alive);
}

namespace {

struct CrtComponent {
    std::uint64_t p;
    std::uint64_t rem; // residue mod p; for p | q the slot is per-target
    bool from_q;
};

std::uint64_t default_y1(std::uint64_t q, std::uint64_t y) {
    const double root = std::pow(std::log(static_cast<double>(y)), 0.25);
    const auto base = static_cast<std::uint64_t>(std::ceil(root)) * 4;
    return std::max<std::uint64_t>(largest_prime_factor(q) + 1, base);
}

} // namespace

ConstructionResult construct_tuple(std::uint64_t q, const std::vector<std::uint64_t>& residues,
                                   std::uint64_t y, std::uint64_t z,
                                   const std::vector<std::uint64_t>& excluded,
                                   std::uint64_t y1_override, std::uint64_t y2_override) {
    if (q < 2 || !is_squarefree(q))
        throw std::invalid_argument("construct_tuple: q must be squarefree and > 1");
    if (residues.empty()) throw std::invalid_argument("construct_tuple: need at least one residue");
    for (std::size_t i = 0; i < residues.size(); ++i) {
        if (residues[i] < 1 || std::gcd(residues[i], q) != 1)
            throw std::invalid_argument("construct_tuple: residues must be positive and coprime to q");
        if (i && residues[i] < residues[i - 1])
            throw std::invalid_argument("construct_tuple: residues must be non-decreasing");
    }
    if (y <= largest_prime_factor(q))
        throw std::invalid_argument("construct_tuple: y must exceed the largest prime factor of q");
    if (z <= y) throw std::invalid_argument("construct_tuple: z must exceed y");
    if (excluded.size() > 1)
        throw std::invalid_argument("construct_tuple: at most one excluded prime is supported");
    for (std::uint64_t p : excluded) {
        if (!is_prime(p)) throw std::invalid_argument("construct_tuple: excluded entry not prime");
        if (q % p == 0)
            throw std::invalid_argument("construct_tuple: cannot exclude a prime dividing q");
    }
    const std::uint32_t k = static_cast<std::uint32_t>(residues.size());

    SievePlan plan;
    plan.q = q;
    plan.y = y;
    plan.z = z;
    plan.excluded = excluded;
    plan.y1 = y1_override ? y1_override : default_y1(q, y);
    plan.y2 = y2_override ? y2_override : (y + 1) / 2;
    if (!(2 < plan.y1 && plan.y1 < plan.y2 && plan.y2 < y))
        throw construction_error("cutoffs: need 2 < y1 < y2 < y");

    auto is_excluded = [&](std::uint64_t p) {
        return std::find(excluded.begin(), excluded.end(), p) != excluded.end();
    };

    std::vector<bool> alive(z + 1, true);
    alive[0] = false;

    // phase (i): zero classes for the mid primes in (y1, y2]
    for_each_prime(plan.y1 + 1, plan.y2 + 1, [&](std::uint64_t p) {
        if (is_excluded(p)) return true;
        plan.choice[p] = 0;
        remove_class(alive, z, p, 0);
        return true;
    });

    // phase (ii): small primes <= y1; class 0 is forced on divisors of q,
    // everything else is chosen greedily on the current survivors
    std::vector<CrtComponent> components;
    for_each_prime(3, plan.y1 + 1, [&](std::uint64_t p) {
        if (is_excluded(p)) return true;
        if (q % p == 0) {
            plan.choice[p] = 0;
            remove_class(alive, z, p, 0);
            return true;
        }
        const std::uint64_t a = greedy_residue(survivors_of(alive), p);
        plan.choice[p] = a;
        remove_class(alive, z, p, a);
        // target class: -1 when the sieved class is 1, else 1
        components.push_back(CrtComponent{p, (a == 1) ? p - 1 : 1, false});
        return true;
    });
    if (q % 2 == 0) {
        plan.choice[2] = 0;
        remove_class(alive, z, 2, 0);
    }

    // phase (iii): targets = distinct primes in (y, z] congruent to the
    // combined class A_i mod lcm(q, P1)
    Int modulus(1);
    for (const auto& comp : components) modulus *= Int(static_cast<unsigned long>(comp.p));
    modulus *= Int(static_cast<unsigned long>(q));
    if (!modulus.fits_ulong_p())
        throw construction_error("residue combination: modulus exceeds machine range");
    const std::uint64_t L = modulus.get_ui();

    std::vector<std::uint64_t> targets;
    std::vector<std::uint64_t> target_residues;
    std::set<std::uint64_t> used;
    for (std::uint32_t i = 0; i < k; ++i) {
        // CRT: x = residues[i] (mod q), x = comp.rem (mod comp.p)
        Int x(0), mod(1);
        auto merge = [&](std::uint64_t p, std::uint64_t rem) {
            Int pz(static_cast<unsigned long>(p));
            Int inv;
            if (!mpz_invert(inv.get_mpz_t(), mod.get_mpz_t(), pz.get_mpz_t()))
                throw construction_error("residue combination: moduli not coprime");
            Int t = ((Int(static_cast<unsigned long>(rem)) - x) * inv) % pz;
            if (t < 0) t += pz;
            x += mod * t;
            mod *= pz;
        };
        merge(q, residues[i] % q);
        for (const auto& comp : components) merge(comp.p, comp.rem);
        std::uint64_t a_i = mpz_class(x % Int(static_cast<unsigned long>(L))).get_ui();
        if (a_i == 0) a_i = L;

        // smallest unused prime = A_i (mod L) in (y, z]
        std::uint64_t g = a_i;
        while (g <= y) g += L;
        std::uint64_t found = 0;
        for (; g <= z; g += L) {
            if (!used.count(g) && is_prime(g)) {
                found = g;
                break;
            }
        }
        if (!found)
            throw construction_error("target phase: no unused prime in class " +
                                     std::to_string(a_i) + " mod " + std::to_string(L) +
                                     " within (y, z]");
        used.insert(found);
        targets.push_back(found);
        target_residues.push_back(residues[i]);
    }

    // phase (iv): the remaining primes (2 for odd q, and those in (y2, y])
    // must remove every survivor that is not a target
    std::vector<std::uint64_t> cleanup_primes;
    if (q % 2 != 0 && !is_excluded(2)) cleanup_primes.push_back(2);
    for_each_prime(plan.y2 + 1, y + 1, [&](std::uint64_t p) {
        if (!is_excluded(p)) cleanup_primes.push_back(p);
        return true;
    });
    const std::set<std::uint64_t> target_set(targets.begin(), targets.end());
    auto unwanted_left = [&]() {
        std::uint64_t n = 0;
        for (std::uint64_t g = 1; g <= z; ++g)
            if (alive[g] && !target_set.count(g)) ++n;
        return n;
    };
    for (std::uint64_t p : cleanup_primes) {
        // class hitting the most unwanted survivors while avoiding every target
        std::vector<std::uint64_t> hits(p, 0);
        std::vector<bool> blocked(p, false);
        for (std::uint64_t t : target_set) blocked[t % p] = true;
        for (std::uint64_t g = 1; g <= z; ++g)
            if (alive[g] && !target_set.count(g)) ++hits[g % p];
        std::uint64_t best = p, best_hits = 0;
        for (std::uint64_t rclass = 0; rclass < p; ++rclass) {
            if (blocked[rclass]) continue;
            if (best == p || hits[rclass] > best_hits) {
                best = rclass;
                best_hits = hits[rclass];
            }
        }
        if (best == p)
            throw construction_error("cleanup phase: prime " + std::to_string(p) +
                                     " has no class avoiding the targets");
        plan.choice[p] = best;
        remove_class(alive, z, p, best);
    }
    if (const std::uint64_t left = unwanted_left(); left > 0)
        throw construction_error("cleanup phase: " + std::to_string(left) +
                                 " unwanted survivors remain");

    AdmissibleTuple tuple;
    tuple.q = q;
    tuple.k = k;
    tuple.smooth_bound = y;
    {
        std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
        for (std::uint32_t i = 0; i < k; ++i) pairs.emplace_back(targets[i], target_residues[i]);
        std::sort(pairs.begin(), pairs.end());
        for (const auto& [h, r] : pairs) {
            tuple.h.push_back(h);
            tuple.residues.push_back(r);
        }
    }

    const auto report = verify_construction(tuple, plan, z);
    if (!report.all_ok()) {
        std::string what = "self-check failed:";
        if (!report.admissible) what += " admissibility";
        if (!report.residues_ok) what += " residues";
        if (!report.smooth_ok) what += " smoothness";
        if (!report.set_identity_ok) what += " set-identity";
        throw construction_error(what);
    }
    return ConstructionResult{std::move(tuple), std::move(plan)};
}

ConstructionResult construct_tuple_auto(std::uint64_t q,
                                        const std::vector<std::uint64_t>& residues,
                                        const std::vector<std::uint64_t>& excluded,
                                        const SweepSettings& sweep) {
    const std::uint64_t pq = largest_prime_factor(q);
    std::uint64_t y0 = sweep.y_start ? sweep.y_start : std::max<std::uint64_t>(pq + 1, 50);
    std::string last_error = "sweep grid empty";
    for (std::uint64_t y = y0; y <= sweep.y_cap; y += sweep.y_step) {
        for (std::uint64_t dz = sweep.z_step; dz <= sweep.z_span_cap; dz += sweep.z_step) {
            try {
                return construct_tuple(q, residues, y, y + dz, excluded);
            } catch (const construction_error& e) {
                last_error = e.what();
            }
        }
    }
    throw construction_error("parameter sweep exhausted; last failure: " + last_error);
}

VerificationReport verify_construction(const AdmissibleTuple& tuple, const SievePlan& plan,
                                       std::uint64_t z) {
    VerificationReport report;
    const auto adm = is_admissible(tuple.h);
    report.admissible = adm.admissible;
    report.admissibility_witness = adm.witness;

    report.residues_ok = tuple.h.size() == tuple.residues.size() && !tuple.h.empty();
    if (report.residues_ok) {
        for (std::size_t i = 0; i < tuple.h.size(); ++i) {
            if (tuple.h[i] % tuple.q != tuple.residues[i] % tuple.q ||
                std::gcd(tuple.h[i], tuple.q) != 1) {
                report.residues_ok = false;
                break;
            }
        }
    }

    report.smooth_ok = true;
    for (std::size_t i = 0; i < tuple.h.size() && report.smooth_ok; ++i)
        for (std::size_t j = i + 1; j < tuple.h.size() && report.smooth_ok; ++j) {
            const auto d = static_cast<std::int64_t>(tuple.h[j]) -
                           static_cast<std::int64_t>(tuple.h[i]);
            if (!is_smooth(d, tuple.smooth_bound)) report.smooth_ok = false;
        }

    try {
        const auto survivors = sieve_interval(z, plan);
        report.set_identity_ok = survivors.size() == tuple.h.size() &&
                                 std::equal(survivors.begin(), survivors.end(), tuple.h.begin());
    } catch (const std::invalid_argument&) {
        report.set_identity_ok = false;
    }
    return report;
}

void write_tuple(std::ostream& os, const AdmissibleTuple& tuple, std::uint64_t z) {
    os << tuple.k << ' ' << tuple.q << ' ' << tuple.smooth_bound << ' ' << z << '\n';
    for (std::size_t i = 0; i < tuple.h.size(); ++i)
        os << tuple.h[i] << ' ' << tuple.residues[i] << '\n';
}

AdmissibleTuple read_tuple(std::istream& is, std::uint64_t* z_out) {
    AdmissibleTuple t;
    std::uint64_t z = 0;
    if (!(is >> t.k >> t.q >> t.smooth_bound >> z))
        throw std::invalid_argument("tuple record: bad header");
    for (std::uint32_t i = 0; i < t.k; ++i) {
        std::uint64_t h = 0, r = 0;
        if (!(is >> h >> r)) throw std::invalid_argument("tuple record: truncated");
        t.h.push_back(h);
        t.residues.push_back(r);
    }
    if (z_out) *z_out = z;
    return t;
}

void write_plan(std::ostream& os, const SievePlan& plan) {
    os << plan.q << ' ' << plan.y << ' ' << plan.z << ' ' << plan.y1 << ' ' << plan.y2 << '\n';
    os << "Z";
    for (std::uint64_t p : plan.excluded) os << ' ' << p;
    os << '\n';
    for (const auto& [p, a] : plan.choice) os << p << ' ' << a << '\n';
}

SievePlan read_plan(std::istream& is) {
    SievePlan plan;
    if (!(is >> plan.q >> plan.y >> plan.z >> plan.y1 >> plan.y2))
        throw std::invalid_argument("plan record: bad header");
    std::string line;
    std::getline(is, line);
    if (!std::getline(is, line) || line.rfind('Z', 0) != 0)
        throw std::invalid_argument("plan record: missing Z line");
    {
        std::istringstream zs(line.substr(1));
        std::uint64_t p;
        while (zs >> p) plan.excluded.push_back(p);
    }
    std::uint64_t p = 0, a = 0;
    while (is >> p >> a) plan.choice[p] = a;
    return plan;
}

} // namespace rcp
