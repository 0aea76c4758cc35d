// rcp: residue class patterns of consecutive primes — census, exact
// combinatorial bounds, admissible tuple construction, sieve-integral checks.
//
// Exit codes: 0 success, 2 argument error, 3 resource/construction failure.
// Scalar results print bare on stdout (rationals as num/den); composite
// results print line-delimited key=value records. The effective config is
// echoed as a '# config:' line on stderr.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "rcp/admissible.hpp"
#include "rcp/arith.hpp"
#include "rcp/bounds.hpp"
#include "rcp/census.hpp"
#include "rcp/combinatorics.hpp"
#include "rcp/errors.hpp"
#include "rcp/primes.hpp"
#include "rcp/process.hpp"
#include "rcp/sievelab.hpp"

namespace {

std::vector<std::uint32_t> parse_u32_list(const std::string& s) {
    std::vector<std::uint32_t> out;
    std::stringstream ss(s);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(std::stoul(field));
    if (out.empty()) throw std::invalid_argument("expected a comma-separated list");
    return out;
}

std::vector<std::uint64_t> parse_u64_list(const std::string& s) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(s);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(std::stoull(field));
    if (out.empty()) throw std::invalid_argument("expected a comma-separated list");
    return out;
}

rcp::Rat parse_rational(const std::string& s) {
    rcp::Rat c(mpq_class(s));
    c.canonicalize();
    return c;
}

std::uint64_t env_cap(const char* name, std::uint64_t fallback) {
    if (const char* v = std::getenv(name)) return std::stoull(v);
    return fallback;
}

void echo_config(const std::string& line) { std::cerr << "# config: " << line << '\n'; }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"residue class patterns of consecutive primes"};
    app.require_subcommand(1);

    unsigned threads = 1;
    app.add_option("--threads", threads, "worker threads where supported")->capture_default_str();

    // census
    auto* c_census = app.add_subcommand("census", "full pattern census of consecutive primes");
    std::uint64_t x = 0, q = 0;
    std::uint32_t m = 1;
    std::string out_path;
    c_census->add_option("--x", x, "count windows with p_n <= x")->required();
    c_census->add_option("--q", q, "modulus")->required();
    c_census->add_option("--m", m, "window length")->required();
    c_census->add_option("--out", out_path, "write to file instead of stdout");

    // pattern
    auto* c_pattern = app.add_subcommand("pattern", "count one residue pattern");
    std::string a_list;
    c_pattern->add_option("--x", x, "")->required();
    c_pattern->add_option("--q", q, "")->required();
    c_pattern->add_option("--a", a_list, "pattern, e.g. 1,3")->required();

    // strings
    auto* c_strings = app.add_subcommand("strings", "maximal constant-residue runs");
    std::uint64_t a_res = 0, min_len = 1;
    c_strings->add_option("--x", x, "")->required();
    c_strings->add_option("--q", q, "")->required();
    c_strings->add_option("--a", a_res, "residue")->required();
    c_strings->add_option("--min-len", min_len, "minimum run length")->capture_default_str();

    // M
    auto* c_m = app.add_subcommand("M", "family-size threshold");
    unsigned long mm = 0, rr = 0;
    c_m->add_option("--m", mm, "")->required();
    c_m->add_option("--r", rr, "")->required();

    // jcount / jenum
    auto* c_jcount = app.add_subcommand("jcount", "count admissible index maps");
    unsigned long jm = 0, jM = 0, jr = 0;
    c_jcount->add_option("--m", jm, "")->required();
    c_jcount->add_option("--M", jM, "")->required();
    c_jcount->add_option("--r", jr, "")->required();
    auto* c_jenum = app.add_subcommand("jenum", "enumerate admissible index maps");
    c_jenum->add_option("--m", jm, "")->required();
    c_jenum->add_option("--M", jM, "")->required();
    c_jenum->add_option("--r", jr, "")->required();

    // margin
    auto* c_margin = app.add_subcommand("margin", "sieve positivity margin");
    std::string margin_M;
    c_margin->add_option("--m", mm, "")->required();
    c_margin->add_option("--r", rr, "")->required();
    c_margin->add_option("--M", margin_M, "family size")->required();

    // bounds
    auto* c_bounds = app.add_subcommand("bounds", "lower-bound formulas");
    std::string formula, c_str = "1/2";
    std::uint64_t phi = 0;
    c_bounds
        ->add_option("--formula", formula,
                     "shiu-dirichlet | small-general | small-simplified | large-general | "
                     "large-leading")
        ->required();
    c_bounds->add_option("--m", mm, "")->required();
    c_bounds->add_option("--r", rr, "");
    c_bounds->add_option("--c", c_str, "rational in (0,1), e.g. 5/6")->capture_default_str();
    c_bounds->add_option("--q", q, "modulus (phi computed, squarefreeness checked)");
    c_bounds->add_option("--phi", phi, "Euler phi value, if no --q");

    // process-sim
    auto* c_proc = app.add_subcommand("process-sim", "greedy removal process");
    std::string variant = "distinct-entries", convention = "ceil";
    std::uint32_t p_phi = 0, p_M = 0, p_seg = 1;
    c_proc->add_option("--variant", variant, "piecewise-constant | distinct-entries")
        ->capture_default_str();
    c_proc->add_option("--phi", p_phi, "alphabet size")->required();
    c_proc->add_option("--M", p_M, "seed tuple length")->required();
    c_proc->add_option("--seg", p_seg, "block size / minimum l")->capture_default_str();
    c_proc->add_option("--convention", convention, "ceil | floor (partial final block)")
        ->capture_default_str();

    // admissible-check
    auto* c_adm = app.add_subcommand("admissible-check", "admissibility of a tuple");
    std::string h_list;
    c_adm->add_option("--h", h_list, "tuple, e.g. 0,2,6")->required();

    // construct
    auto* c_con = app.add_subcommand("construct", "admissible tuple with prescribed residues");
    std::string residues_list, plan_out;
    std::uint64_t con_y = 0, con_z = 0, con_y1 = 0, con_y2 = 0;
    std::vector<std::uint64_t> exclude;
    c_con->add_option("--q", q, "")->required();
    c_con->add_option("--residues", residues_list, "non-decreasing, coprime to q")->required();
    c_con->add_option("--y", con_y, "smoothness bound (0: sweep)");
    c_con->add_option("--z", con_z, "interval top (0: sweep)");
    c_con->add_option("--y1", con_y1, "greedy-phase cutoff override");
    c_con->add_option("--y2", con_y2, "zero-phase cutoff override");
    c_con->add_option("--exclude", exclude, "excluded prime (at most one)");
    c_con->add_option("--out", out_path, "write tuple record to file");
    c_con->add_option("--plan-out", plan_out, "write sieve plan to file");

    // verify-tuple
    auto* c_ver = app.add_subcommand("verify-tuple", "recheck a tuple record");
    std::string in_path, plan_path;
    c_ver->add_option("--in", in_path, "tuple record")->required();
    c_ver->add_option("--plan", plan_path, "sieve plan (enables the set-identity check)");

    // sievelab
    auto* c_lab = app.add_subcommand("sievelab", "sieve integral estimates");
    std::string op = "ratio";
    unsigned long lab_k = 16, lab_r = 2;
    std::uint64_t samples = 100000, inner = 64, seed = 1;
    unsigned power = 2;
    c_lab->add_option("--op", op, "moments | integral | marginal-square | ratio | band")
        ->capture_default_str();
    c_lab->add_option("--k", lab_k, "")->capture_default_str();
    c_lab->add_option("--r", lab_r, "")->capture_default_str();
    c_lab->add_option("--samples", samples, "")->capture_default_str();
    c_lab->add_option("--inner-samples", inner, "")->capture_default_str();
    c_lab->add_option("--seed", seed, "")->capture_default_str();
    c_lab->add_option("--power", power, "integrand power for --op integral")->capture_default_str();

    // mertens
    auto* c_mer = app.add_subcommand("mertens", "exact Mertens product");
    c_mer->add_option("--x", x, "")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        if (*c_census) {
            echo_config("census x=" + std::to_string(x) + " q=" + std::to_string(q) +
                        " m=" + std::to_string(m) + " threads=" + std::to_string(threads));
            const auto table = rcp::census(x, q, m, threads);
            if (out_path.empty()) {
                rcp::write_census(std::cout, table);
            } else {
                std::ofstream f(out_path);
                rcp::write_census(f, table);
            }
        } else if (*c_pattern) {
            echo_config("pattern x=" + std::to_string(x) + " q=" + std::to_string(q) +
                        " a=" + a_list);
            const auto entries = parse_u32_list(a_list);
            std::cout << rcp::count_pattern(x, rcp::ResiduePattern{q, entries}) << '\n';
        } else if (*c_strings) {
            echo_config("strings x=" + std::to_string(x) + " q=" + std::to_string(q) +
                        " a=" + std::to_string(a_res) + " min_len=" + std::to_string(min_len));
            for (const auto& run : rcp::find_strings(x, q, a_res, min_len))
                std::cout << "start_index=" << run.start_index << " first_prime=" << run.first_prime
                          << " length=" << run.length << '\n';
        } else if (*c_m) {
            echo_config("M m=" + std::to_string(mm) + " r=" + std::to_string(rr));
            std::cout << rcp::min_family_size(mm, rr).get_str() << '\n';
        } else if (*c_jcount) {
            echo_config("jcount m=" + std::to_string(jm) + " M=" + std::to_string(jM) +
                        " r=" + std::to_string(jr));
            std::cout << rcp::count_monotone_maps(jm, jM, jr).get_str() << '\n';
        } else if (*c_jenum) {
            echo_config("jenum m=" + std::to_string(jm) + " M=" + std::to_string(jM) +
                        " r=" + std::to_string(jr));
            const auto cap = env_cap("RCP_ENUM_CAP", 1u << 20);
            for (const auto& j : rcp::enumerate_monotone_maps(jm, jM, jr, cap)) {
                for (std::size_t i = 0; i < j.size(); ++i) std::cout << (i ? "," : "") << j[i];
                std::cout << '\n';
            }
        } else if (*c_margin) {
            echo_config("margin m=" + std::to_string(mm) + " r=" + std::to_string(rr) +
                        " M=" + margin_M);
            std::cout << rcp::rat_str(rcp::positivity_margin(mm, rr, rcp::Int(margin_M))) << '\n';
        } else if (*c_bounds) {
            if (q != 0) {
                if (!rcp::is_squarefree(q))
                    throw std::invalid_argument("bounds: q must be squarefree");
                phi = rcp::euler_phi(q);
            }
            if (phi == 0) throw std::invalid_argument("bounds: need --q or --phi");
            echo_config("bounds formula=" + formula + " m=" + std::to_string(mm) +
                        " r=" + std::to_string(rr) + " c=" + c_str + " phi=" + std::to_string(phi));
            rcp::BoundReport rep;
            if (formula == "shiu-dirichlet")
                rep = rcp::shiu_dirichlet_bound(mm, phi);
            else if (formula == "small-general")
                rep = rcp::small_general_bound(mm, rr, phi, parse_rational(c_str));
            else if (formula == "small-simplified")
                rep = rcp::small_simplified_bound(mm, phi, parse_rational(c_str));
            else if (formula == "large-general")
                rep = rcp::large_general_bound(mm, rr, phi);
            else if (formula == "large-leading")
                rep = rcp::large_leading_bound(mm, phi);
            else
                throw std::invalid_argument("bounds: unknown formula " + formula);
            rep.q = q;
            std::cout << rep.to_record() << '\n';
        } else if (*c_proc) {
            echo_config("process-sim variant=" + variant + " phi=" + std::to_string(p_phi) +
                        " M=" + std::to_string(p_M) + " seg=" + std::to_string(p_seg) +
                        " convention=" + convention);
            rcp::ProcessParams params;
            if (variant == "piecewise-constant")
                params.variant = rcp::ProcessVariant::piecewise_constant;
            else if (variant == "distinct-entries")
                params.variant = rcp::ProcessVariant::distinct_entries;
            else
                throw std::invalid_argument("process-sim: unknown variant " + variant);
            if (convention == "ceil")
                params.convention = rcp::BlockConvention::partial_final_block;
            else if (convention == "floor")
                params.convention = rcp::BlockConvention::full_blocks_only;
            else
                throw std::invalid_argument("process-sim: unknown convention " + convention);
            params.phi = p_phi;
            params.M_param = p_M;
            params.seg = p_seg;
            const auto cap = env_cap("RCP_ENUM_CAP", 1u << 20);
            const auto state = rcp::simulate_process(params, rcp::greedy_adversary(params), cap);
            for (std::size_t i = 0; i < state.history.size(); ++i) {
                const auto& step = state.history[i];
                std::cout << "step=" << i + 1 << " tuple=";
                for (std::size_t j = 0; j < step.values.size(); ++j)
                    std::cout << (j ? "," : "") << step.values[j];
                std::cout << " removed=" << step.removed << '\n';
            }
            const auto bound = rcp::process_lower_bound(params);
            const bool met =
                rcp::Rat(rcp::Int(static_cast<unsigned long>(state.history.size()))) >= bound;
            std::cout << "steps=" << state.history.size() << " initial=" << state.initial_size
                      << " bound=" << rcp::rat_str(bound)
                      << " bound_met=" << (met ? "true" : "false") << '\n';
        } else if (*c_adm) {
            echo_config("admissible-check h=" + h_list);
            const auto res = rcp::is_admissible(parse_u64_list(h_list));
            if (res.admissible)
                std::cout << "admissible=true\n";
            else
                std::cout << "admissible=false witness=" << *res.witness << '\n';
        } else if (*c_con) {
            echo_config("construct q=" + std::to_string(q) + " residues=" + residues_list +
                        " y=" + std::to_string(con_y) + " z=" + std::to_string(con_z));
            const auto residues = parse_u64_list(residues_list);
            rcp::ConstructionResult result =
                (con_y && con_z)
                    ? rcp::construct_tuple(q, residues, con_y, con_z, exclude, con_y1, con_y2)
                    : rcp::construct_tuple_auto(q, residues, exclude);
            const auto report = rcp::verify_construction(result.tuple, result.plan, result.plan.z);
            std::cerr << "# verified: admissible=" << report.admissible
                      << " residues=" << report.residues_ok << " smooth=" << report.smooth_ok
                      << " set_identity=" << report.set_identity_ok << '\n';
            if (out_path.empty()) {
                rcp::write_tuple(std::cout, result.tuple, result.plan.z);
            } else {
                std::ofstream f(out_path);
                rcp::write_tuple(f, result.tuple, result.plan.z);
            }
            if (!plan_out.empty()) {
                std::ofstream f(plan_out);
                rcp::write_plan(f, result.plan);
            }
        } else if (*c_ver) {
            echo_config("verify-tuple in=" + in_path + " plan=" + plan_path);
            std::ifstream f(in_path);
            if (!f) throw std::invalid_argument("verify-tuple: cannot open " + in_path);
            std::uint64_t z = 0;
            const auto tuple = rcp::read_tuple(f, &z);
            const auto adm = rcp::is_admissible(tuple.h);
            std::cout << "check=admissibility pass=" << (adm.admissible ? "true" : "false");
            if (!adm.admissible) std::cout << " witness=" << *adm.witness;
            std::cout << '\n';
            bool residues_ok = true;
            for (std::size_t i = 0; i < tuple.h.size(); ++i)
                if (tuple.h[i] % tuple.q != tuple.residues[i] % tuple.q ||
                    std::gcd(tuple.h[i], tuple.q) != 1)
                    residues_ok = false;
            std::cout << "check=residues pass=" << (residues_ok ? "true" : "false") << '\n';
            bool smooth_ok = true;
            for (std::size_t i = 0; i < tuple.h.size(); ++i)
                for (std::size_t j = i + 1; j < tuple.h.size(); ++j)
                    if (!rcp::is_smooth(static_cast<std::int64_t>(tuple.h[j] - tuple.h[i]),
                                        tuple.smooth_bound))
                        smooth_ok = false;
            std::cout << "check=smoothness pass=" << (smooth_ok ? "true" : "false") << '\n';
            bool all = adm.admissible && residues_ok && smooth_ok;
            if (!plan_path.empty()) {
                std::ifstream pf(plan_path);
                if (!pf) throw std::invalid_argument("verify-tuple: cannot open " + plan_path);
                const auto plan = rcp::read_plan(pf);
                const auto report = rcp::verify_construction(tuple, plan, z);
                std::cout << "check=set_identity pass="
                          << (report.set_identity_ok ? "true" : "false") << '\n';
                all = all && report.set_identity_ok;
            } else {
                std::cout << "check=set_identity pass=skipped\n";
            }
            std::cout << "all=" << (all ? "true" : "false") << '\n';
            if (!all) return 3;
        } else if (*c_lab) {
            echo_config("sievelab op=" + op + " k=" + std::to_string(lab_k) +
                        " r=" + std::to_string(lab_r) + " samples=" + std::to_string(samples) +
                        " inner_samples=" + std::to_string(inner) +
                        " seed=" + std::to_string(seed) + " threads=" + std::to_string(threads));
            std::cout.precision(17);
            if (op == "moments") {
                const auto spec = rcp::make_gspec(lab_k);
                const auto g = rcp::g_moments(spec);
                std::cout << "k=" << lab_k << " A=" << spec.A << " T=" << spec.T
                          << " integral=" << g.integral << " square=" << g.square_integral
                          << " integral_quadrature=" << g.integral_quadrature
                          << " square_quadrature=" << g.square_quadrature << " float=true\n";
            } else if (op == "integral") {
                const auto est = rcp::estimate_integral(lab_k, samples, seed, threads, power);
                std::cout << "k=" << lab_k << " power=" << power << " samples=" << samples
                          << " seed=" << seed << " I=" << est.value << " I_stderr=" << est.stderr_
                          << " float=true\n";
            } else if (op == "marginal-square") {
                const auto est =
                    rcp::estimate_marginal_square(lab_k, lab_r, samples, seed, inner, threads);
                std::cout << "k=" << lab_k << " r=" << lab_r << " samples=" << samples
                          << " inner_samples=" << est.inner_samples << " seed=" << seed
                          << " J=" << est.value << " J_stderr=" << est.stderr_ << " float=true\n";
            } else if (op == "ratio") {
                std::cout << rcp::ratio_check(lab_k, lab_r, samples, seed, inner, threads)
                                 .to_record()
                          << '\n';
            } else if (op == "band") {
                std::cout << rcp::lower_band_check(lab_k, samples, seed, threads).to_record()
                          << '\n';
            } else {
                throw std::invalid_argument("sievelab: unknown op " + op);
            }
        } else if (*c_mer) {
            echo_config("mertens x=" + std::to_string(x));
            const auto p = rcp::mertens_product(x);
            std::cout.precision(17);
            std::cout << "x=" << x << " product=" << rcp::rat_str(p.exact)
                      << " asymptotic=" << p.asymptotic << " asymptotic_float=true\n";
        }
    } catch (const rcp::resource_error& e) {
        std::cerr << "resource error: " << e.what() << '\n';
        return 3;
    } catch (const rcp::construction_error& e) {
        std::cerr << "construction error: " << e.what() << '\n';
        return 3;
    } catch (const rcp::protocol_error& e) {
        std::cerr << "protocol error: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "argument error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
