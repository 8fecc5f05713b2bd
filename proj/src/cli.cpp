#include "ncvx/cli.hpp"

#include "ncvx/convexity.hpp"
#include "ncvx/freegrp.hpp"
#include "ncvx/hyper.hpp"
#include "ncvx/matalg.hpp"
#include "ncvx/rng.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace ncvx::cli {

namespace {

using condexp::ExpectationSpec;
using condexp::Filtration;
using convexity::DeficitResult;
using freegrp::GroupPolynomial;
using matalg::Matrix;
using matalg::SchattenExponent;

struct GlobalOpts {
    std::string json_path;
    double tol = 1e-9;
    std::uint64_t seed = 12345;
};

int emit(VerificationReport& report, const GlobalOpts& g, std::ostream& out,
         std::chrono::steady_clock::time_point started) {
    report.elapsed_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    out << report.to_table();
    if (!g.json_path.empty()) {
        std::ofstream f(g.json_path);
        if (!f) throw std::runtime_error("cannot open --json path " + g.json_path);
        f << report.to_json();
    }
    return report.passed() ? 0 : 1;
}

// Random pinching: two near-half coordinate blocks conjugated by a seeded
// Haar-ish unitary.
ExpectationSpec random_pinching(int dim, std::uint64_t seed, std::uint64_t stream) {
    auto gen = rng::engine_for(seed, stream);
    const Matrix u = rng::random_unitary(dim, gen);
    Matrix p1 = Matrix::Zero(dim, dim);
    for (int i = 0; i < dim / 2; ++i) p1(i, i) = 1.0;
    const Matrix p2 = Matrix::Identity(dim, dim) - p1;
    std::vector<Matrix> proj{u * p1 * u.adjoint(), u * p2 * u.adjoint()};
    return ExpectationSpec::pinching(std::move(proj), 1e-8);
}

std::pair<int, int> balanced_factorization(int dim) {
    for (int l = static_cast<int>(std::sqrt(static_cast<double>(dim))); l >= 2; --l) {
        if (dim % l == 0) return {l, dim / l};
    }
    throw CLI::ValidationError("--dim", "partial-trace requires a composite dimension");
}

ExpectationSpec spec_by_name(const std::string& name, int dim, std::uint64_t seed) {
    if (name == "diagonal") return ExpectationSpec::diagonal(dim);
    if (name == "full-trace") return ExpectationSpec::full_trace(dim);
    if (name == "partial-trace") {
        auto [l, r] = balanced_factorization(dim);
        return ExpectationSpec::partial_trace_right(l, r);
    }
    if (name == "pinching") return random_pinching(dim, seed, 0xC0FFEE);
    throw CLI::ValidationError("--spec", "unknown expectation kind " + name);
}

// Increasing chain C I < diagonal < pair-blocks < M_n, identity last.
Filtration canonical_filtration(int dim) {
    Filtration f;
    f.specs.push_back(ExpectationSpec::full_trace(dim));
    f.specs.push_back(ExpectationSpec::diagonal(dim));
    std::vector<std::vector<int>> pairs;
    for (int i = 0; i < dim; i += 2) {
        std::vector<int> block{i};
        if (i + 1 < dim) block.push_back(i + 1);
        pairs.push_back(std::move(block));
    }
    f.specs.push_back(ExpectationSpec::partition_pinching(dim, pairs));
    f.specs.push_back(ExpectationSpec::identity(dim));
    return f;
}

GroupPolynomial random_homogeneous(int rank, int degree, std::mt19937_64& gen) {
    std::normal_distribution<double> normal;
    GroupPolynomial x(rank);
    for (const freegrp::Word& w : freegrp::sphere(rank, degree)) {
        x.add(w, {normal(gen), normal(gen)});
    }
    return x;
}

GroupPolynomial load_polynomial(const std::string& path, int rank) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open --input path " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return freegrp::parse_polynomial(buf.str(), rank);
}

double normalized(double value, double scale) { return value / (scale * scale); }

// ---- subcommand bodies ----------------------------------------------------

int cmd_verify_bcl(int dim, double p, int trials, const GlobalOpts& g, std::ostream& out,
                   std::chrono::steady_clock::time_point started) {
    SchattenExponent sp(p);
    VerificationReport report;
    report.command = "verify-bcl";
    report.seed = g.seed;
    report.add_param("dim", static_cast<std::int64_t>(dim));
    report.add_param("p", p);
    report.add_param("trials", static_cast<std::int64_t>(trials));

    double min_norm_deficit = std::numeric_limits<double>::infinity();
    double max_abs_norm_deficit = 0.0;
    for (int t = 0; t < trials; ++t) {
        auto gen = rng::engine_for(g.seed, static_cast<std::uint64_t>(t));
        const Matrix x = rng::ginibre(dim, gen);
        const Matrix y = rng::ginibre(dim, gen);
        const DeficitResult d = convexity::bcl_deficit(x, y, sp);
        min_norm_deficit = std::min(min_norm_deficit, normalized(d.deficit, d.scale));
        max_abs_norm_deficit = std::max(max_abs_norm_deficit,
                                        std::abs(normalized(d.deficit, d.scale)));
    }
    report.check("min_deficit_over_scale_sq", min_norm_deficit, -g.tol,
                 min_norm_deficit >= -g.tol);
    if (p == 2.0) {
        report.check("max_abs_deficit_over_scale_sq", max_abs_norm_deficit, 1e-10,
                     max_abs_norm_deficit <= 1e-10);
    }
    report.finalize();
    return emit(report, g, out, started);
}

int cmd_verify_martingale(int dim, double p, const std::string& spec_name, int trials,
                          const GlobalOpts& g, std::ostream& out,
                          std::chrono::steady_clock::time_point started) {
    SchattenExponent sp(p);
    const ExpectationSpec e = spec_by_name(spec_name, dim, g.seed);
    VerificationReport report;
    report.command = "verify-martingale";
    report.seed = g.seed;
    report.add_param("dim", static_cast<std::int64_t>(dim));
    report.add_param("p", p);
    report.add_param("spec", spec_name);
    report.add_param("trials", static_cast<std::int64_t>(trials));

    double min_norm_deficit = std::numeric_limits<double>::infinity();
    for (int t = 0; t < trials; ++t) {
        auto gen = rng::engine_for(g.seed, static_cast<std::uint64_t>(t));
        const Matrix x = rng::ginibre(dim, gen);
        const DeficitResult d = convexity::martingale_deficit(x, e, sp);
        min_norm_deficit = std::min(min_norm_deficit, normalized(d.deficit, d.scale));
    }
    report.check("min_deficit_over_scale_sq", min_norm_deficit, -g.tol,
                 min_norm_deficit >= -g.tol);
    report.finalize();
    return emit(report, g, out, started);
}

int cmd_verify_filtration(int dim, double p, int trials, const GlobalOpts& g,
                          std::ostream& out, std::chrono::steady_clock::time_point started) {
    SchattenExponent sp(p);
    const Filtration f = canonical_filtration(dim);
    VerificationReport report;
    report.command = "verify-filtration";
    report.seed = g.seed;
    report.add_param("dim", static_cast<std::int64_t>(dim));
    report.add_param("p", p);
    report.add_param("trials", static_cast<std::int64_t>(trials));

    const VerificationReport validation = condexp::validate_filtration(f, 20, g.seed, g.tol);
    report.check("filtration_valid", validation.passed() ? 1.0 : 0.0, 1.0, validation.passed());

    double min_norm_deficit = std::numeric_limits<double>::infinity();
    for (int t = 0; t < trials; ++t) {
        auto gen = rng::engine_for(g.seed, static_cast<std::uint64_t>(t));
        const Matrix x = rng::ginibre(dim, gen);
        const DeficitResult d = convexity::filtration_deficit(x, f, sp);
        min_norm_deficit = std::min(min_norm_deficit, normalized(d.deficit, d.scale));
    }
    report.check("min_deficit_over_scale_sq", min_norm_deficit, -g.tol,
                 min_norm_deficit >= -g.tol);
    report.finalize();
    return emit(report, g, out, started);
}

int cmd_verify_signs(int dim, double p, int n_specs, const std::string& family, int trials,
                     const GlobalOpts& g, std::ostream& out,
                     std::chrono::steady_clock::time_point started) {
    SchattenExponent sp(p);
    std::vector<ExpectationSpec> specs;
    if (family == "walsh") {
        int bits = 0;
        while ((1 << bits) < dim) ++bits;
        if ((1 << bits) != dim || n_specs > bits) {
            throw CLI::ValidationError(
                "--family", "walsh requires dim = 2^m and --n-specs <= m");
        }
        for (int i = 0; i < n_specs; ++i) {
            specs.push_back(ExpectationSpec::walsh_coordinate(bits, i));
        }
    } else if (family == "random") {
        for (int i = 0; i < n_specs; ++i) {
            specs.push_back(random_pinching(dim, g.seed, 0xABCD0000ULL + i));
        }
    } else {
        throw CLI::ValidationError("--family", "expected walsh or random");
    }

    VerificationReport report;
    report.command = "verify-signs";
    report.seed = g.seed;
    report.add_param("dim", static_cast<std::int64_t>(dim));
    report.add_param("p", p);
    report.add_param("n_specs", static_cast<std::int64_t>(n_specs));
    report.add_param("family", family);
    report.add_param("trials", static_cast<std::int64_t>(trials));

    double min_norm_deficit = std::numeric_limits<double>::infinity();
    for (int t = 0; t < trials; ++t) {
        auto gen = rng::engine_for(g.seed, static_cast<std::uint64_t>(t));
        const Matrix x = rng::ginibre(dim, gen);
        const DeficitResult d = convexity::sign_pattern_deficit(x, specs, sp);
        min_norm_deficit = std::min(min_norm_deficit, normalized(d.deficit, d.scale));
    }
    report.check("min_deficit_over_scale_sq", min_norm_deficit, -g.tol,
                 min_norm_deficit >= -g.tol);
    report.finalize();
    return emit(report, g, out, started);
}

int cmd_psi_oracle(int dim, double p, int trials, const GlobalOpts& g, std::ostream& out,
                   std::chrono::steady_clock::time_point started) {
    SchattenExponent sp(p);
    VerificationReport report;
    report.command = "psi-oracle";
    report.seed = g.seed;
    report.add_param("dim", static_cast<std::int64_t>(dim));
    report.add_param("p", p);
    report.add_param("trials", static_cast<std::int64_t>(trials));

    double max_rel_err = 0.0;
    double max_dual_rel = 0.0;
    double worst_monotonicity = std::numeric_limits<double>::infinity();
    bool df1_all = true;
    bool all_finite = true;
    // NaN would slide through std::max unnoticed.
    auto accumulate_max = [&all_finite](double& acc, double v) {
        if (!std::isfinite(v)) all_finite = false;
        acc = std::max(acc, v);
    };
    for (int t = 0; t < trials; ++t) {
        auto gen = rng::engine_for(g.seed, static_cast<std::uint64_t>(t));
        const Matrix a = rng::gue_invertible(dim, gen, 0.3);
        const Matrix b = rng::gue(dim, gen, 2.5);

        const double quad = convexity::psi_second_derivative(a, b, sp);
        const double fd = convexity::psi_second_derivative_fd(a, b, sp);
        accumulate_max(max_rel_err, std::abs(quad - fd) / std::max(1.0, std::abs(fd)));

        df1_all = df1_all && convexity::df1_check(a, b, sp).passed();

        // psi''(0) for (a, b) dominates the value for (|a|, b); the positive
        // case is the smaller one.
        const Matrix abs_a = matalg::selfadjoint_abs(a);
        const double quad_abs = convexity::psi_second_derivative(abs_a, b, sp);
        if (!std::isfinite(quad_abs)) all_finite = false;
        worst_monotonicity = std::min(worst_monotonicity, quad - quad_abs);

        const double positive = convexity::psi_second_derivative_positive(abs_a, b, sp);
        accumulate_max(max_dual_rel,
                       std::abs(positive - quad_abs) / std::max(1.0, std::abs(quad_abs)));
    }
    if (!all_finite) {
        report.check("all_values_finite", 0.0, 1.0, false);
    }
    report.check("max_rel_error_vs_finite_differences", max_rel_err, 1e-6, max_rel_err <= 1e-6);
    report.check("df1_all_pass", df1_all ? 1.0 : 0.0, 1.0, df1_all);
    report.check("abs_monotonicity_min_gain", worst_monotonicity, -1e-7,
                 worst_monotonicity >= -1e-7);
    report.check("dual_formula_max_rel_disagreement", max_dual_rel, 1e-6, max_dual_rel <= 1e-6);
    report.finalize();
    return emit(report, g, out, started);
}

int cmd_sharpness(double p, double c, double t_max, int steps, const GlobalOpts& g,
                  std::ostream& out, std::chrono::steady_clock::time_point started) {
    SchattenExponent sp(p);
    VerificationReport report = convexity::sharpness_probe(sp, c, t_max, steps);
    report.seed = g.seed;
    return emit(report, g, out, started);
}

int cmd_khintchine(int rank, int degree, int q, int trials, const std::string& input,
                   const GlobalOpts& g, std::ostream& out,
                   std::chrono::steady_clock::time_point started) {
    VerificationReport report;
    report.command = "khintchine";
    report.seed = g.seed;
    report.add_param("rank", static_cast<std::int64_t>(rank));
    report.add_param("degree", static_cast<std::int64_t>(degree));
    report.add_param("q", static_cast<std::int64_t>(q));

    double max_ratio = 0.0;
    if (!input.empty()) {
        const GroupPolynomial x = load_polynomial(input, rank);
        max_ratio = freegrp::khintchine_ratio(x, q);
        report.add_param("input", input);
    } else {
        report.add_param("trials", static_cast<std::int64_t>(trials));
        for (int t = 0; t < trials; ++t) {
            auto gen = rng::engine_for(g.seed, static_cast<std::uint64_t>(t));
            const GroupPolynomial x = random_homogeneous(rank, degree, gen);
            max_ratio = std::max(max_ratio, freegrp::khintchine_ratio(x, q));
        }
    }
    const double bound = hyper::khintchine_upper(degree, static_cast<double>(q));
    if (q == 4) {
        report.check("max_ratio_vs_bound", max_ratio, bound + 1e-10,
                     max_ratio <= bound + 1e-10);
    } else {
        report.check("max_ratio", max_ratio, bound, true);
    }
    report.finalize();
    return emit(report, g, out, started);
}

int cmd_haagerup(int rank, int degree, int radius, const std::string& input,
                 const GlobalOpts& g, std::ostream& out,
                 std::chrono::steady_clock::time_point started) {
    GroupPolynomial x(rank);
    if (!input.empty()) {
        x = load_polynomial(input, rank);
    } else {
        auto gen = rng::engine_for(g.seed, 0);
        std::normal_distribution<double> normal;
        for (const freegrp::Word& w : freegrp::sphere(rank, degree)) {
            x.add(w, {normal(gen), 0.0});
        }
    }
    VerificationReport report = freegrp::haagerup_lower_check(x, radius, g.seed);
    return emit(report, g, out, started);
}

int cmd_rq(double q, double tol, const GlobalOpts& g, std::ostream& out,
           std::chrono::steady_clock::time_point started) {
    const hyper::SeriesBound r = hyper::rq_value(q, tol);
    VerificationReport report;
    report.command = "rq";
    report.add_param("q", q);
    report.add_param("tol", tol);
    report.check("value_upper", r.value_upper(), 1.0, q < 4.0 || r.value_upper() < 1.0);
    report.check("partial_sum", r.partial_sum, r.value_upper(), true);
    report.check("tail_bound", r.tail_bound, tol, r.tail_bound <= tol);
    report.check("terms_used", static_cast<double>(r.terms_used), 1e6, true);
    if (q == 4.0) {
        report.check("r4_paper_bound", r.value_upper(), 0.92952 + 1e-5,
                     r.value_upper() <= 0.92952 + 1e-5);
    }
    report.finalize();
    return emit(report, g, out, started);
}

int cmd_rq_table(double qmin, double qmax, int points, const GlobalOpts& g, std::ostream& out,
                 std::chrono::steady_clock::time_point started) {
    if (!(qmin > 2.0) || !(qmax > qmin) || points < 2) {
        throw CLI::ValidationError("--qmin/--qmax", "need 2 < qmin < qmax and points >= 2");
    }
    VerificationReport report;
    report.command = "rq-table";
    report.add_param("qmin", qmin);
    report.add_param("qmax", qmax);
    report.add_param("points", static_cast<std::int64_t>(points));

    const double q0 = hyper::q_zero();
    bool below_one_from_4 = true;
    bool monotone_from_q0 = true;
    double prev_upper = 0.0;
    bool have_prev = false;
    for (int i = 0; i < points; ++i) {
        const double q = qmin + (qmax - qmin) * i / (points - 1);
        const hyper::SeriesBound r = hyper::rq_value(q, 1e-9);
        std::ostringstream name;
        name << "q=" << q;
        const bool row_ok = (q < 4.0) || (r.value_upper() < 1.0);
        if (q >= 4.0 && r.value_upper() >= 1.0) below_one_from_4 = false;
        report.check(name.str() + "_value_upper", r.value_upper(), 1.0, row_ok);
        if (q >= q0) {
            if (have_prev && r.value_upper() > prev_upper + 1e-12) monotone_from_q0 = false;
            prev_upper = r.value_upper();
            have_prev = true;
        }
    }
    report.check("all_below_one_for_q_ge_4", below_one_from_4 ? 1.0 : 0.0, 1.0,
                 below_one_from_4);
    report.check("monotone_nonincreasing_from_q0", monotone_from_q0 ? 1.0 : 0.0, 1.0,
                 monotone_from_q0);
    report.finalize();
    return emit(report, g, out, started);
}

int cmd_q0(const GlobalOpts& g, std::ostream& out,
           std::chrono::steady_clock::time_point started) {
    VerificationReport report;
    report.command = "q0";
    const double q0 = hyper::q_zero();
    const double residual = std::abs(6.0 * (q0 - 1.0) / (q0 * q0) - 1.0 / std::log(3.0));
    report.check("q0", q0, 5.36244, std::abs(q0 - 5.36244) <= 1e-4);
    report.check("k2_criterion_residual", residual, 1e-9, residual <= 1e-9);
    // Strictness of the k = 3 criterion at q = 4: 6(q-1)/q^2 <= 2/log 4.
    const double k3_lhs = 6.0 * 3.0 / 16.0;
    const double k3_rhs = 2.0 / std::log(4.0);
    report.check("k3_criterion_at_q4", k3_lhs, k3_rhs, k3_lhs <= k3_rhs);
    report.finalize();
    return emit(report, g, out, started);
}

int cmd_eps0(double tol, const GlobalOpts& g, std::ostream& out,
             std::chrono::steady_clock::time_point started) {
    VerificationReport report;
    report.command = "eps0";
    report.add_param("tol", tol);
    const double eps0 = hyper::epsilon_zero(tol);
    report.check("eps0", eps0, 0.18, std::abs(eps0 - 0.18) <= 0.02);
    const double above = hyper::rq_value(4.0 - eps0 + 0.01, 1e-10).value_upper();
    const double below = hyper::rq_value(4.0 - eps0 - 0.05, 1e-10).value_upper();
    report.check("rq_above_root", above, 1.0, above < 1.0);
    report.check("rq_below_root", below, 1.0, below > 1.0);
    report.finalize();
    return emit(report, g, out, started);
}

int cmd_hyper_direct(int rank, int radius, int q, double t, int trials, const GlobalOpts& g,
                     std::ostream& out, std::chrono::steady_clock::time_point started) {
    if (t < 0.0) t = std::log(std::sqrt(q - 1.0));
    VerificationReport report = hyper::hyper_direct_check(rank, radius, q, t, trials, g.seed);
    return emit(report, g, out, started);
}

int cmd_growth_bound(double q, double C, double rho, const GlobalOpts& g, std::ostream& out,
                     std::chrono::steady_clock::time_point started) {
    const hyper::GrowthParams params{C, rho};
    VerificationReport report;
    report.command = "growth-bound";
    report.add_param("q", q);
    report.add_param("C", C);
    report.add_param("rho", rho);
    const double bound = hyper::growth_time_bound(q, params);
    const double optimal = std::log(std::sqrt(q - 1.0));
    report.check("time_bound", bound, optimal, true);
    report.check("bound_at_least_log_sqrt_qm1", bound - optimal, 0.0, bound >= optimal);
    report.finalize();
    return emit(report, g, out, started);
}

int cmd_slq(const std::vector<double>& u_values, int grid_size, const GlobalOpts& g,
            std::ostream& out, std::chrono::steady_clock::time_point started) {
    VerificationReport report;
    report.command = "slq";
    report.add_param("grid_size", static_cast<std::int64_t>(grid_size));
    for (double u : u_values) {
        VerificationReport sub = hyper::slq_f_convexity(u, grid_size);
        for (const Outcome& o : sub.outcomes) {
            std::ostringstream name;
            name << "u=" << u << "_" << o.name;
            report.check(name.str(), o.value, o.bound, o.pass);
        }
    }
    report.finalize();
    return emit(report, g, out, started);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    const auto started = std::chrono::steady_clock::now();
    CLI::App app{"Numerical verification of sharp noncommutative convexity inequalities "
                 "and free-group hypercontractivity constants"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--json", g.json_path, "write the machine-readable report to this path");
    app.add_option("--tol", g.tol, "deficit tolerance relative to scale^2");
    app.add_option("--seed", g.seed, "master seed for all sampled trials");

    int dim = 4, trials = 100, n_specs = 2, rank = 2, degree = 1, q_even = 4, radius = 4;
    int steps = 24, points = 10, grid_size = 1000;
    double p = 1.5, c = -1.0, t_max = 0.1, q = 4.0, tol = 1e-9, eps_tol = 1e-4, t = -1.0;
    double C = 1.0, rho = 100.0, qmin = 4.0, qmax = 40.0;
    std::string spec_name = "diagonal", family = "walsh", input;
    std::vector<double> u_values{1e-3, 0.5, 2.718281828459045, 1e3};

    auto* bcl = app.add_subcommand("verify-bcl", "two-point convexity deficit on random pairs");
    bcl->add_option("--dim", dim);
    bcl->add_option("--p", p);
    bcl->add_option("--trials", trials);

    auto* mart = app.add_subcommand("verify-martingale", "conditional-expectation deficit");
    mart->add_option("--dim", dim);
    mart->add_option("--p", p);
    mart->add_option("--spec", spec_name)
        ->check(CLI::IsMember({"diagonal", "pinching", "full-trace", "partial-trace"}));
    mart->add_option("--trials", trials);

    auto* filt = app.add_subcommand("verify-filtration", "filtration-sum deficit");
    filt->add_option("--dim", dim);
    filt->add_option("--p", p);
    filt->add_option("--trials", trials);

    auto* signs = app.add_subcommand("verify-signs", "sign-pattern sum deficit");
    signs->add_option("--dim", dim);
    signs->add_option("--p", p);
    signs->add_option("--n-specs", n_specs);
    signs->add_option("--family", family)->check(CLI::IsMember({"walsh", "random"}));
    signs->add_option("--trials", trials);

    auto* psi = app.add_subcommand("psi-oracle", "second-derivative oracle vs finite differences");
    psi->add_option("--dim", dim);
    psi->add_option("--p", p);
    psi->add_option("--trials", trials);

    auto* sharp = app.add_subcommand("sharpness", "two-point sharpness probe for (p-1)");
    sharp->add_option("--p", p);
    sharp->add_option("--c", c, "constant to test (default p-1)");
    sharp->add_option("--tmax", t_max);
    sharp->add_option("--steps", steps);

    auto* khin = app.add_subcommand("khintchine", "Khintchine ratio on homogeneous polynomials");
    khin->add_option("--rank", rank);
    khin->add_option("--degree", degree);
    khin->add_option("--q", q_even);
    khin->add_option("--trials", trials);
    khin->add_option("--input", input, "polynomial file instead of random samples");

    auto* haag = app.add_subcommand("haagerup", "operator-norm lower bound vs (k+1)||x||_2");
    haag->add_option("--rank", rank);
    haag->add_option("--degree", degree);
    haag->add_option("--radius", radius);
    haag->add_option("--input", input, "polynomial file instead of a random sample");

    auto* rq = app.add_subcommand("rq", "certified R_q series value");
    rq->add_option("--q", q);
    rq->add_option("--tol", tol);

    auto* rqt = app.add_subcommand("rq-table", "R_q certification row by row");
    rqt->add_option("--qmin", qmin);
    rqt->add_option("--qmax", qmax);
    rqt->add_option("--points", points);

    auto* q0cmd = app.add_subcommand("q0", "the k=2 criterion threshold q0");

    auto* eps = app.add_subcommand("eps0", "root of R_q = 1 below q = 4");
    eps->add_option("--tol", eps_tol);

    auto* hd = app.add_subcommand("hyper-direct", "direct Poisson-semigroup contraction check");
    hd->add_option("--rank", rank);
    hd->add_option("--radius", radius);
    hd->add_option("--q", q_even);
    hd->add_option("--t", t, "time (default log sqrt(q-1))");
    hd->add_option("--trials", trials);

    auto* gb = app.add_subcommand("growth-bound", "hypercontractivity time bound under growth");
    gb->add_option("--q", q);
    gb->add_option("--C", C);
    gb->add_option("--rho", rho);

    auto* slq = app.add_subcommand("slq", "log-Sobolev f-convexity check");
    slq->add_option("--u-grid", u_values, "u values to test");
    slq->add_option("--grid-size", grid_size);

    for (CLI::App* sub : {bcl, mart, filt, signs, psi, sharp, khin, haag, rq, rqt, q0cmd,
                          eps, hd, gb, slq}) {
        sub->fallthrough();  // lets --json/--tol/--seed follow the subcommand
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (bcl->parsed()) return cmd_verify_bcl(dim, p, trials, g, out, started);
        if (mart->parsed()) {
            return cmd_verify_martingale(dim, p, spec_name, trials, g, out, started);
        }
        if (filt->parsed()) return cmd_verify_filtration(dim, p, trials, g, out, started);
        if (signs->parsed()) {
            return cmd_verify_signs(dim, p, n_specs, family, trials, g, out, started);
        }
        if (psi->parsed()) return cmd_psi_oracle(dim, p, trials, g, out, started);
        if (sharp->parsed()) {
            if (c < 0.0) c = p - 1.0;
            return cmd_sharpness(p, c, t_max, steps, g, out, started);
        }
        if (khin->parsed()) {
            return cmd_khintchine(rank, degree, q_even, trials, input, g, out, started);
        }
        if (haag->parsed()) return cmd_haagerup(rank, degree, radius, input, g, out, started);
        if (rq->parsed()) return cmd_rq(q, tol, g, out, started);
        if (rqt->parsed()) return cmd_rq_table(qmin, qmax, points, g, out, started);
        if (q0cmd->parsed()) return cmd_q0(g, out, started);
        if (eps->parsed()) return cmd_eps0(eps_tol, g, out, started);
        if (hd->parsed()) {
            return cmd_hyper_direct(rank, radius, q_even, t, trials, g, out, started);
        }
        if (gb->parsed()) return cmd_growth_bound(q, C, rho, g, out, started);
        if (slq->parsed()) return cmd_slq(u_values, grid_size, g, out, started);
    } catch (const freegrp::ResourceError& e) {
        err << "resource error: " << e.what() << "\n";
        return 2;
    } catch (const CLI::Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "error: no subcommand\n";
    return 2;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

}  // namespace ncvx::cli
