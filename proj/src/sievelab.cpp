#include "rcp/sievelab.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

#include "rcp/rng.hpp"

namespace rcp {

GSpec make_gspec(unsigned long k) {
    if (k < 16)
        throw std::invalid_argument("make_gspec: k must be >= 16 (A = log k - 2 log log k > 0)");
    GSpec spec;
    spec.k = k;
    const double logk = std::log(static_cast<double>(k));
    spec.A = logk - 2.0 * std::log(logk);
    spec.T = (std::exp(spec.A) - 1.0) / spec.A;
    return spec;
}

double g_eval(double t, const GSpec& spec) {
    if (t < 0) throw std::invalid_argument("g_eval: t must be >= 0");
    if (t > spec.T) return 0.0;
    return 1.0 / (1.0 + spec.A * t);
}

namespace {

// adaptive Simpson on [a, b]
template <typename F>
double simpson(F&& f, double a, double b, double fa, double fm, double fb, double whole,
               double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
double integrate(F&& f, double a, double b, double tol) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

// mass of g^2 on [0, T]
double g_square_mass(const GSpec& spec) { return (1.0 - std::exp(-spec.A)) / spec.A; }

// inverse CDF of the density g (total mass 1): u = (e^{Av} - 1)/A
double sample_g(const GSpec& spec, double v) { return std::expm1(spec.A * v) / spec.A; }

// inverse CDF of the density g^2 / Q: u = Q v / (1 - A Q v)
double sample_g_square(const GSpec& spec, double Q, double v) {
    return Q * v / (1.0 - spec.A * Q * v);
}

} // namespace

GMoments g_moments(const GSpec& spec) {
    GMoments m;
    m.integral = std::log1p(spec.A * spec.T) / spec.A; // = 1 by the choice of T
    m.square_integral = g_square_mass(spec);
    m.integral_quadrature =
        integrate([&](double t) { return g_eval(t, spec); }, 0.0, spec.T, 1e-13);
    m.square_quadrature = integrate(
        [&](double t) {
            const double g = g_eval(t, spec);
            return g * g;
        },
        0.0, spec.T, 1e-13);
    return m;
}

namespace {

constexpr std::uint64_t kChunk = 1 << 14;

constexpr std::uint64_t kStreamIntegral = 0x49;
constexpr std::uint64_t kStreamOuter = 0x4a;
constexpr std::uint64_t kStreamInner = 0x4b;
constexpr std::uint64_t kStreamUniform = 0x55;

struct Accumulator {
    double sum = 0.0;
    double sum_sq = 0.0;
};

// Deterministic chunked mean/variance: chunk c covers sample indices
// [c*kChunk, ...); partial sums combine in chunk order no matter which
// worker produced them, so the result is independent of the thread count.
template <typename PerSample>
MCEstimate run_chunked(std::uint64_t samples, double scale, unsigned threads,
                       PerSample&& per_sample) {
    const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
    std::vector<Accumulator> acc(chunks);
    auto run_chunk = [&](std::uint64_t c) {
        const std::uint64_t lo = c * kChunk;
        const std::uint64_t hi = std::min(samples, lo + kChunk);
        Accumulator a;
        for (std::uint64_t i = lo; i < hi; ++i) {
            const double v = per_sample(i);
            a.sum += v;
            a.sum_sq += v * v;
        }
        acc[c] = a;
    };
    if (threads <= 1 || chunks == 1) {
        for (std::uint64_t c = 0; c < chunks; ++c) run_chunk(c);
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::uint64_t> next{0};
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (std::uint64_t c = next.fetch_add(1); c < chunks; c = next.fetch_add(1))
                    run_chunk(c);
            });
        for (auto& th : pool) th.join();
    }
    double sum = 0.0, sum_sq = 0.0;
    for (const auto& a : acc) {
        sum += a.sum;
        sum_sq += a.sum_sq;
    }
    const double n = static_cast<double>(samples);
    const double mean = sum / n;
    const double var = std::max(0.0, (sum_sq - sum * sum / n) / (n - 1.0));
    MCEstimate est;
    est.value = mean * scale;
    est.stderr_ = std::sqrt(var / n) * scale;
    est.samples = samples;
    return est;
}

double log_factorial(unsigned long n) { return std::lgamma(static_cast<double>(n) + 1.0); }

} // namespace

MCEstimate estimate_integral(unsigned long k, std::uint64_t samples, std::uint64_t seed,
                             unsigned threads, unsigned power) {
    const GSpec spec = make_gspec(k);
    if (samples < 2) throw std::invalid_argument("estimate_integral: need samples >= 2");
    if (power != 1 && power != 2)
        throw std::invalid_argument("estimate_integral: power must be 1 or 2");
    const CounterRng rng(seed, kStreamIntegral + 16 * power);
    const double Q = g_square_mass(spec);
    // change of variables u = k t turns the integral into k^-k times the
    // acceptance probability of k independent draws from the g (or g^2/Q)
    // density staying inside the scaled simplex
    const double scale = power == 1 ? std::exp(-static_cast<double>(k) * std::log(double(k)))
                                    : std::exp(static_cast<double>(k) *
                                               (std::log(Q) - std::log(double(k))));
    MCEstimate est = run_chunked(samples, scale, threads, [&](std::uint64_t i) {
        const std::uint64_t base = i * k;
        double sum = 0.0;
        for (unsigned long j = 0; j < k; ++j) {
            const double v = rng.uniform(base + j);
            sum += power == 1 ? sample_g(spec, v) : sample_g_square(spec, Q, v);
            if (sum > static_cast<double>(k)) return 0.0;
        }
        return 1.0;
    });
    est.seed = seed;
    est.target = EstimateTarget::integral;
    est.k = k;
    return est;
}

MCEstimate estimate_integral_uniform(unsigned long k, std::uint64_t samples, std::uint64_t seed,
                                     unsigned threads, unsigned power) {
    const GSpec spec = make_gspec(k);
    if (samples < 2) throw std::invalid_argument("estimate_integral_uniform: need samples >= 2");
    if (power != 1 && power != 2)
        throw std::invalid_argument("estimate_integral_uniform: power must be 1 or 2");
    const CounterRng rng(seed, kStreamUniform + 16 * power);
    const double volume = std::exp(-log_factorial(k)); // 1/k!
    MCEstimate est = run_chunked(samples, volume, threads, [&](std::uint64_t i) {
        // uniform point on the simplex: k+1 exponential spacings, normalized
        const std::uint64_t base = i * (k + 1);
        double total = 0.0;
        for (unsigned long j = 0; j <= k; ++j) total += rng.exponential(base + j);
        double weight = 1.0;
        for (unsigned long j = 0; j < k; ++j) {
            const double t = rng.exponential(base + j) / total;
            const double g = g_eval(spec.k * t, spec);
            weight *= power == 1 ? g : g * g;
            if (weight == 0.0) break;
        }
        return weight;
    });
    est.seed = seed;
    est.target = EstimateTarget::integral;
    est.k = k;
    return est;
}

namespace {

// closed form of the 1-dimensional marginal: integral of g(k u) du over [0, x]
double inner_marginal_1d(double x, const GSpec& spec) {
    const double upper = std::min(x * static_cast<double>(spec.k), spec.T);
    if (upper <= 0) return 0.0;
    return std::log1p(spec.A * upper) / (spec.A * static_cast<double>(spec.k));
}

} // namespace

MCEstimate estimate_marginal_square(unsigned long k, unsigned long r, std::uint64_t samples,
                                    std::uint64_t seed, std::uint64_t inner_samples,
                                    unsigned threads) {
    const GSpec spec = make_gspec(k);
    if (r < 1 || r > k)
        throw std::invalid_argument("estimate_marginal_square: need 1 <= r <= k");
    if (samples < 2) throw std::invalid_argument("estimate_marginal_square: need samples >= 2");
    if (r >= 2 && inner_samples < 2)
        throw std::invalid_argument("estimate_marginal_square: need inner_samples >= 2");
    const unsigned long d = k - r; // outer dimension
    const CounterRng outer_rng(seed, kStreamOuter);
    const CounterRng inner_rng(seed, kStreamInner);
    const double Q = g_square_mass(spec);
    const double kk = static_cast<double>(k);
    // outer coordinates drawn from the g^2/Q density absorb the squared
    // factors exactly; scale = (Q/k)^d
    const double scale = std::exp(static_cast<double>(d) * (std::log(Q) - std::log(kk)));
    const double inner_scale = std::exp(-static_cast<double>(r) * std::log(kk)); // k^-r

    MCEstimate est = run_chunked(samples, scale, threads, [&](std::uint64_t i) {
        const std::uint64_t base = i * (d == 0 ? 1 : d);
        double outer_sum = 0.0;
        for (unsigned long j = 0; j < d; ++j)
            outer_sum += sample_g_square(spec, Q, outer_rng.uniform(base + j));
        if (outer_sum > kk) return 0.0;
        const double x = 1.0 - outer_sum / kk; // remaining simplex budget

        if (r == 1) {
            const double inner = inner_marginal_1d(x, spec);
            return inner * inner;
        }

        // nested estimate of the r-dimensional marginal at budget x:
        // k^-r times the acceptance fraction of r draws from the g density
        const double budget = kk * x;
        const std::uint64_t inner_base = i * inner_samples * r;
        double s = 0.0;
        for (std::uint64_t j = 0; j < inner_samples; ++j) {
            const std::uint64_t b = inner_base + j * r;
            double inner_sum = 0.0;
            unsigned long l = 0;
            for (; l < r; ++l) {
                inner_sum += sample_g(spec, inner_rng.uniform(b + l));
                if (inner_sum > budget) break;
            }
            if (l == r) s += 1.0;
        }
        const double n_in = static_cast<double>(inner_samples);
        const double p = s / n_in;
        const double var_p = (s - s * p) / (n_in - 1.0) / n_in; // Var of the mean
        const double inner_est = inner_scale * p;
        // E[X^2] = (EX)^2 + Var X: subtract the estimated variance of the
        // inner mean so the square stays unbiased
        return inner_est * inner_est - inner_scale * inner_scale * var_p;
    });
    est.seed = seed;
    est.target = EstimateTarget::marginal_square;
    est.k = k;
    est.r = r;
    est.inner_samples = (r >= 2) ? inner_samples : 0;
    return est;
}

std::string RatioReport::to_record() const {
    std::ostringstream os;
    os.precision(17);
    os << "k=" << k << " r=" << r << " samples=" << marginal.samples
       << " inner_samples=" << marginal.inner_samples << " seed=" << marginal.seed
       << " I=" << integral.value << " I_stderr=" << integral.stderr_ << " J=" << marginal.value
       << " J_stderr=" << marginal.stderr_ << " bound=" << bound_factor
       << " slack_sigmas=" << slack_sigmas << " pass=" << (pass ? "true" : "false")
       << " float=true";
    return os.str();
}

RatioReport ratio_check(unsigned long k, unsigned long r, std::uint64_t samples,
                        std::uint64_t seed, std::uint64_t inner_samples, unsigned threads) {
    if (r < 2) throw std::invalid_argument("ratio_check: r must be >= 2 (proven direction)");
    RatioReport rep;
    rep.k = k;
    rep.r = r;
    rep.integral = estimate_integral(k, samples, seed, threads);
    rep.marginal = estimate_marginal_square(k, r, samples, seed, inner_samples, threads);
    rep.bound_factor = std::pow(std::log(static_cast<double>(k)) / static_cast<double>(k),
                                static_cast<double>(r));
    rep.lhs = rep.marginal.value;
    rep.rhs = rep.bound_factor * rep.integral.value;
    rep.combined_stderr = std::sqrt(rep.marginal.stderr_ * rep.marginal.stderr_ +
                                    rep.bound_factor * rep.bound_factor *
                                        rep.integral.stderr_ * rep.integral.stderr_);
    rep.slack_sigmas = (rep.rhs - rep.lhs) / rep.combined_stderr;
    rep.pass = rep.lhs <= rep.rhs + 3.0 * rep.combined_stderr;
    return rep;
}

std::string BandReport::to_record() const {
    std::ostringstream os;
    os.precision(17);
    os << "k=" << k << " samples=" << marginal.samples << " seed=" << marginal.seed
       << " I=" << integral.value << " I_stderr=" << integral.stderr_ << " J=" << marginal.value
       << " J_stderr=" << marginal.stderr_ << " ratio=" << ratio << " reference=" << reference
       << " ratio_over_reference=" << ratio_over_reference
       << " pass=" << (pass ? "true" : "false") << " float=true";
    return os.str();
}

BandReport lower_band_check(unsigned long k, std::uint64_t samples, std::uint64_t seed,
                            unsigned threads) {
    BandReport rep;
    rep.k = k;
    rep.integral = estimate_integral(k, samples, seed, threads);
    rep.marginal = estimate_marginal_square(k, 1, samples, seed, 0, threads);
    rep.ratio = rep.marginal.value / rep.integral.value;
    rep.reference = std::log(static_cast<double>(k)) / static_cast<double>(k);
    rep.ratio_over_reference = rep.ratio / rep.reference;
    rep.pass = rep.ratio_over_reference >= 0.1 && rep.ratio_over_reference <= 10.0;
    return rep;
}

} // namespace rcp
