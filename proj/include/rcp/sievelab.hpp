#pragma once
#include <cstdint>
#include <string>

namespace rcp {

// The explicit cutoff weight g(t) = 1/(1+At) on [0, T], 0 beyond, with
// A = log k - 2 log log k and T = (e^A - 1)/A, so that g integrates to 1.
struct GSpec {
    unsigned long k = 0;
    double A = 0.0;
    double T = 0.0;
};

// Rejects k < 16 (A must stay positive).
GSpec make_gspec(unsigned long k);

double g_eval(double t, const GSpec& spec);

struct GMoments {
    double integral = 0.0;        // closed form: always exactly 1
    double square_integral = 0.0; // (1 - e^{-A}) / A
    double integral_quadrature = 0.0;
    double square_quadrature = 0.0;
};
GMoments g_moments(const GSpec& spec);

enum class EstimateTarget { integral, marginal_square };

// One Monte Carlo answer. Reproducible: (seed, samples, target) fixes the
// value bit for bit, independent of thread count.
struct MCEstimate {
    double value = 0.0;
    double stderr_ = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t inner_samples = 0; // 0 when the inner integral is closed form
    std::uint64_t seed = 0;
    EstimateTarget target = EstimateTarget::integral;
    unsigned long k = 0;
    unsigned long r = 0; // 0 for the plain integral
};

// Integral of prod_i g(k t_i)^power over the standard simplex sum t_i <= 1.
// power=2 is the normalization the inequality chain is proven at; power=1
// is the plain product. Estimated by exact importance sampling: after the
// change of variables u = k t, the coordinates are drawn from the g (or
// g^2) density itself and only the simplex indicator is averaged, so every
// k has full acceptance.
MCEstimate estimate_integral(unsigned long k, std::uint64_t samples, std::uint64_t seed,
                             unsigned threads = 1, unsigned power = 2);

// Cross-check sampler: uniform point on the simplex via k+1 normalized
// exponential spacings, volume factor 1/k! analytic. The integrand support
// shrinks fast, so this is only usable for small k (~<= 24).
MCEstimate estimate_integral_uniform(unsigned long k, std::uint64_t samples, std::uint64_t seed,
                                     unsigned threads = 1, unsigned power = 2);

// Integral of (inner r-dimensional marginal of F)^2 over the outer k-r
// variables. The inner integral is closed form at r = 1 and a nested Monte
// Carlo estimate otherwise, squared with the variance-subtraction correction
// so the square is unbiased. r = k degenerates to a 0-dimensional outer
// integral and is allowed.
MCEstimate estimate_marginal_square(unsigned long k, unsigned long r, std::uint64_t samples,
                                    std::uint64_t seed, std::uint64_t inner_samples = 64,
                                    unsigned threads = 1);

struct RatioReport {
    unsigned long k = 0;
    unsigned long r = 0;
    MCEstimate integral;
    MCEstimate marginal;
    double bound_factor = 0.0; // ((log k)/k)^r
    double lhs = 0.0;          // marginal estimate
    double rhs = 0.0;          // bound_factor * integral estimate
    double combined_stderr = 0.0;
    double slack_sigmas = 0.0; // (rhs - lhs) / combined_stderr
    bool pass = false;

    std::string to_record() const;
};

// Checks marginal_square <= ((log k)/k)^r * integral within 3 combined
// standard errors. r >= 2 (the proven direction).
RatioReport ratio_check(unsigned long k, unsigned long r, std::uint64_t samples,
                        std::uint64_t seed, std::uint64_t inner_samples = 64,
                        unsigned threads = 1);

struct BandReport {
    unsigned long k = 0;
    MCEstimate integral;
    MCEstimate marginal; // r = 1
    double ratio = 0.0;  // marginal / integral
    double reference = 0.0; // (log k)/k
    double ratio_over_reference = 0.0;
    bool pass = false;   // ratio within [0.1, 10] * reference

    std::string to_record() const;
};

// Sanity band for the first marginal: the proven lower bound carries an
// unquantified constant, so only the order of magnitude is asserted.
BandReport lower_band_check(unsigned long k, std::uint64_t samples, std::uint64_t seed,
                            unsigned threads = 1);

} // namespace rcp
