#include "rcp/bounds.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rcp/combinatorics.hpp"

namespace rcp {

std::string formula_name(FormulaId id) {
    switch (id) {
        case FormulaId::shiu_dirichlet: return "shiu_dirichlet";
        case FormulaId::small_general: return "small_general";
        case FormulaId::small_simplified: return "small_simplified";
        case FormulaId::large_general: return "large_general";
        case FormulaId::large_leading: return "large_leading";
    }
    return "?";
}

std::string BoundReport::to_record() const {
    std::ostringstream os;
    os << "formula=" << formula_name(id) << " m=" << m;
    if (r) os << " r=" << r;
    if (has_c) os << " c=" << rat_str(c);
    if (q) os << " q=" << q;
    os << " phi=" << phi;
    os << " applicable=" << (applicable ? "true" : "false");
    os << " reason=" << (reason.empty() ? "-" : reason);
    os << " exact=" << (exact ? "true" : "false");
    if (applicable) {
        if (exact)
            os << " value=" << rat_str(exact_value);
        else {
            os.precision(17);
            os << " value=" << float_value;
        }
    }
    for (const auto& [k, v] : extras) os << ' ' << k << '=' << v;
    return os.str();
}

namespace {

void check_c(const Rat& c) {
    if (c <= 0 || c >= 1) throw std::invalid_argument("bounds: c must lie in (0, 1)");
}

} // namespace

BoundReport shiu_dirichlet_bound(unsigned long m, std::uint64_t phi) {
    if (m < 1 || phi < 1) throw std::invalid_argument("shiu_dirichlet_bound: m, phi must be >= 1");
    BoundReport rep;
    rep.id = FormulaId::shiu_dirichlet;
    rep.m = m;
    rep.phi = phi;
    rep.exact_value = Rat(Int(m) * Int(static_cast<unsigned long>(phi)));
    return rep;
}

BoundReport small_general_bound(unsigned long m, unsigned long r, std::uint64_t phi,
                                const Rat& c) {
    check_c(c);
    if (m < 1 || r < 2) throw std::invalid_argument("small_general_bound: need m >= 1, r >= 2");
    BoundReport rep;
    rep.id = FormulaId::small_general;
    rep.m = m;
    rep.r = r;
    rep.phi = phi;
    rep.c = c;
    rep.has_c = true;

    if (100 * r > m) {
        rep.applicable = false;
        rep.reason = "r_exceeds_m_over_100";
        return rep;
    }
    const Int M = min_family_size(m, r);
    // block size floor(c(m-1)/(r-1))
    Int seg = (c.get_num() * Int(m - 1)) / (c.get_den() * Int(static_cast<unsigned long>(r - 1)));
    rep.extras.emplace_back("M", M.get_str());
    rep.extras.emplace_back("block", seg.get_str());
    if (seg < 1) {
        rep.applicable = false;
        rep.reason = "block_size_zero";
        return rep;
    }
    Int K;
    mpz_cdiv_q(K.get_mpz_t(), M.get_mpz_t(), seg.get_mpz_t());
    rep.extras.emplace_back("K", K.get_str());
    if (Int(static_cast<unsigned long>(phi)) < K) {
        rep.applicable = false;
        rep.reason = "phi_below_block_count";
        return rep;
    }
    // 2 (1-c) m K^-5 phi (phi-1)
    Rat value = Rat(2 * (1 - c) * Int(m));
    value /= Rat(int_pow(K, 5));
    value *= Rat(Int(static_cast<unsigned long>(phi)) * Int(static_cast<unsigned long>(phi - 1)));
    value.canonicalize();
    rep.exact_value = value;
    return rep;
}

BoundReport small_simplified_bound(unsigned long m, std::uint64_t phi, const Rat& c) {
    check_c(c);
    if (m < 2) throw std::invalid_argument("small_simplified_bound: m must be >= 2");
    BoundReport rep;
    rep.id = FormulaId::small_simplified;
    rep.m = m;
    rep.phi = phi;
    rep.c = c;
    rep.has_c = true;
    rep.exact = false;

    const double cd = c.get_d();
    const double logm = std::log(static_cast<double>(m));
    const double phi_min = 8.0 / cd * std::exp(2.0) * logm * logm;
    {
        std::ostringstream os;
        os.precision(17);
        os << phi_min;
        rep.extras.emplace_back("phi_min", os.str());
    }
    if (static_cast<double>(phi) <= phi_min) {
        rep.applicable = false;
        rep.reason = "phi_below_applicability_threshold";
        return rep;
    }
    const double e10 = std::exp(10.0);
    rep.float_value = (1.0 - cd) * std::pow(cd, 5) * static_cast<double>(m) /
                      (512.0 * e10 * std::pow(logm, 10)) * static_cast<double>(phi) *
                      (static_cast<double>(phi) - 1.0);

    // crossover against the m*phi baseline, threshold from the c = 5/6 remark
    const double crossover_phi = 7645.0 * e10 * std::pow(logm, 10);
    const double baseline = static_cast<double>(m) * static_cast<double>(phi);
    std::ostringstream os;
    os.precision(17);
    os << crossover_phi;
    rep.extras.emplace_back("crossover_phi", os.str());
    std::ostringstream os2;
    os2.precision(17);
    os2 << baseline;
    rep.extras.emplace_back("shiu_dirichlet", os2.str());
    rep.extras.emplace_back("beats_shiu_dirichlet",
                            rep.float_value > baseline ? "true" : "false");
    return rep;
}

BoundReport large_general_bound(unsigned long m, unsigned long r, std::uint64_t phi) {
    if (m < 1 || r < 2) throw std::invalid_argument("large_general_bound: need m >= 1, r >= 2");
    BoundReport rep;
    rep.id = FormulaId::large_general;
    rep.m = m;
    rep.r = r;
    rep.phi = phi;
    const Int M = min_family_size(m, r);
    rep.extras.emplace_back("M", M.get_str());
    const unsigned long t = (m + r - 2) / (r - 1); // ceil(m/(r-1))
    rep.extras.emplace_back("t", std::to_string(t));
    if (Int(static_cast<unsigned long>(phi)) < M) {
        rep.applicable = false;
        rep.reason = "phi_below_M";
        return rep;
    }
    Rat value(factorial(t) * falling_factorial(Int(static_cast<unsigned long>(phi)), t),
              falling_factorial(M, t));
    value.canonicalize();
    rep.exact_value = value;
    return rep;
}

BoundReport large_leading_bound(unsigned long m, std::uint64_t phi) {
    if (m < 1) throw std::invalid_argument("large_leading_bound: m must be >= 1");
    BoundReport rep;
    rep.id = FormulaId::large_leading;
    rep.m = m;
    rep.phi = phi;
    const double logm = std::log(static_cast<double>(m));
    const unsigned long r =
        std::max<unsigned long>(2, static_cast<unsigned long>(std::floor(logm)) + 1);
    rep.r = r;
    const Int M = min_family_size(m, r);
    const unsigned long t = (m + r - 2) / (r - 1);
    rep.extras.emplace_back("M", M.get_str());
    rep.extras.emplace_back("t", std::to_string(t));
    const double phi_min = 8.0 * std::exp(2.0) * static_cast<double>(m) * logm;
    {
        std::ostringstream os;
        os.precision(17);
        os << phi_min;
        rep.extras.emplace_back("phi_min", os.str());
    }
    if (static_cast<double>(phi) <= phi_min) {
        rep.applicable = false;
        rep.reason = "phi_below_applicability_threshold";
        return rep;
    }
    Rat value(int_pow(Int(static_cast<unsigned long>(phi)), t), binomial(M, t));
    value.canonicalize();
    rep.exact_value = value;
    return rep;
}

} // namespace rcp
