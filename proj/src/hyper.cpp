#include "ncvx/hyper.hpp"

#include "ncvx/freegrp.hpp"
#include "ncvx/quadrature.hpp"
#include "ncvx/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace ncvx::hyper {

double khintchine_upper(int k, double q) {
    if (k < 1) throw std::invalid_argument("khintchine_upper: require k >= 1");
    if (q < 2.0) throw std::invalid_argument("khintchine_upper: require q >= 2");
    const double exponent = (q >= 4.0) ? 1.0 - 3.0 / q : 0.5 - 1.0 / q;
    return std::pow(k + 1.0, exponent);
}

SeriesBound rq_value(double q, double tol) {
    if (!(q > 2.0)) throw std::invalid_argument("rq_value: require q > 2");
    if (!(tol > 0.0)) throw std::invalid_argument("rq_value: tolerance must be positive");
    const double two_alpha = (q >= 4.0) ? 2.0 - 6.0 / q : 1.0 - 2.0 / q;

    SeriesBound out;
    out.q = q;
    double sum = 0.0;
    double term = 0.0;
    for (int k = 2; k <= 1'000'000; ++k) {
        // term_k = (q-1) K_(k,q)^2 (q-1)^(-k) = (k+1)^(2 alpha) (q-1)^(1-k)
        term = std::pow(k + 1.0, two_alpha) * std::pow(q - 1.0, 1.0 - k);
        sum += term;
        // Term ratio r_k = ((k+2)/(k+1))^(2 alpha) / (q-1) decreases in k, so
        // once it is below 1 the remaining terms are geometrically dominated.
        const double r = std::pow((k + 2.0) / (k + 1.0), two_alpha) / (q - 1.0);
        if (r < 1.0) {
            const double tail = term * r / (1.0 - r);
            if (tail <= tol) {
                out.partial_sum = sum;
                out.tail_bound = tail;
                out.terms_used = k - 1;
                return out;
            }
        }
    }
    throw std::runtime_error("rq_value: tolerance unreachable within 1e6 terms");
}

double q_zero() {
    const double s = std::sqrt(3.0 * std::log(3.0));
    return s * (s + std::sqrt(3.0 * std::log(3.0) - 2.0));
}

VerificationReport bridge_check() {
    VerificationReport report;
    report.command = "bridge_check";
    const double q0 = q_zero();
    const SeriesBound r4 = rq_value(4.0, 1e-9);

    // One-sided tolerances in the safe direction for the published constants.
    report.check("r4_value_upper", r4.value_upper(), 0.92952 + 1e-5,
                 r4.value_upper() <= 0.92952 + 1e-5);
    const double bridge = std::pow(3.0, 2.0 * (1.0 - 3.0 / q0)) / (q0 - 1.0) -
                          std::sqrt(3.0) / 3.0;
    report.check("bridge_increment", bridge, 0.02613 + 1e-5, bridge <= 0.02613 + 1e-5);
    const double conclusion = r4.value_upper() + 0.02613;
    report.check("r4_plus_increment_below_one", conclusion, 1.0, conclusion < 1.0);
    report.finalize();
    return report;
}

double epsilon_zero(double tol) {
    if (!(tol > 0.0) || tol < 1e-8 || tol > 0.1) {
        throw std::invalid_argument("epsilon_zero: tolerance out of range");
    }
    const double series_tol = 1e-10;
    double lo = 2.5, hi = 4.0;
    const double f_lo = rq_value(lo, series_tol).value_upper();
    const double f_hi = rq_value(hi, series_tol).value_upper();
    if (!(f_lo > 1.0) || !(f_hi < 1.0)) {
        throw std::runtime_error("epsilon_zero: no sign change on (2.5, 4]");
    }
    for (int it = 0; it < 60 && (hi - lo) > 0.1 * tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (rq_value(mid, series_tol).value_upper() > 1.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 4.0 - 0.5 * (lo + hi);
}

VerificationReport hyper_direct_check(int rank, int ball_radius, int q, double t,
                                      int trials, std::uint64_t seed) {
    using freegrp::GroupPolynomial;
    if (q != 4 && q != 6) {
        throw std::invalid_argument("hyper_direct_check: q must be 4 or 6");
    }
    if (rank < 1 || ball_radius < 1 || trials < 1) {
        throw std::invalid_argument("hyper_direct_check: bad arguments");
    }
    VerificationReport report;
    report.command = "hyper_direct_check";
    report.seed = seed;
    report.add_param("rank", static_cast<std::int64_t>(rank));
    report.add_param("ball_radius", static_cast<std::int64_t>(ball_radius));
    report.add_param("q", static_cast<std::int64_t>(q));
    report.add_param("t", t);
    report.add_param("trials", static_cast<std::int64_t>(trials));

    const std::vector<freegrp::Word> basis = freegrp::ball(rank, ball_radius);
    const double threshold_time = std::log(std::sqrt(q - 1.0));

    double max_ratio = 0.0;
    int violations = 0;
    for (int trial = 0; trial < trials; ++trial) {
        auto gen = rng::engine_for(seed, static_cast<std::uint64_t>(trial));
        std::normal_distribution<double> normal;
        GroupPolynomial y(rank);
        for (const freegrp::Word& w : basis) {
            y.add(w, {normal(gen), normal(gen)});
        }
        // x = y* y is positive; positives attain the 2 -> q norm.
        const GroupPolynomial x = freegrp::poly_multiply(freegrp::adjoint(y), y);
        const GroupPolynomial ptx = freegrp::poisson_apply(x, t);
        const double lhs = freegrp::lq_norm_even(ptx, q);
        const double rhs = freegrp::l2_norm(x);
        const double ratio = lhs / rhs;
        max_ratio = std::max(max_ratio, ratio);
        if (ratio > 1.0 + 1e-10) ++violations;
    }

    if (t >= threshold_time - 1e-15) {
        report.check("max_ratio", max_ratio, 1.0 + 1e-10, max_ratio <= 1.0 + 1e-10);
    } else {
        // Below the conjectured optimal time: violations are expected but a
        // random search cannot certify a supremum, so only report the count.
        report.check("max_ratio_below_threshold_time", max_ratio, 1.0, true);
        report.check("violations_found", static_cast<double>(violations), 0.0, true);
    }
    report.finalize();
    return report;
}

double growth_time_bound(double q, const GrowthParams& g) {
    if (!(q > 2.0)) throw std::invalid_argument("growth_time_bound: require q > 2");
    if (!(g.C > 0.0) || !(g.rho > 1.0)) {
        throw std::invalid_argument("growth_time_bound: require C > 0, rho > 1");
    }
    const double first = (q - 2.0) / q * std::log(std::sqrt(2.0 * g.C * g.rho)) +
                         std::log(std::sqrt(q - 1.0));
    return std::max(first, std::log(g.rho));
}

double growth_tail_estimate(double t, const GrowthParams& g) {
    if (!(g.C > 0.0) || !(g.rho > 1.0)) {
        throw std::invalid_argument("growth_tail_estimate: require C > 0, rho > 1");
    }
    if (!(t > std::log(g.rho))) {
        throw std::invalid_argument("growth_tail_estimate: require t > log rho");
    }
    return 2.0 * g.C * std::exp(-(2.0 * t - std::log(g.rho)));
}

namespace {

// f folded through |theta - 1/2|; dyadic grid points make the fold exact,
// so mirrored evaluations are bit-identical.
double f_theta(double u, double theta) {
    const double d = std::abs(theta - 0.5);
    const double num = (1.0 + u) - 2.0 * std::sqrt(u) * std::cosh(d * std::log(u));
    return num / (0.25 - d * d);
}

// Integrand of the f'' representation; pointwise nonnegative for u > 0.
double fpp_integrand(double u, double theta, double t) {
    const double lu = std::log(u);
    const double a = std::exp(lu * (theta + (1.0 - theta) * (1.0 - t))) -
                     std::exp(lu * (theta * t));
    const double b = std::exp(lu * (1.0 - theta + theta * t)) -
                     std::exp(lu * ((1.0 - theta) * (1.0 - t)));
    return lu * lu * lu * (t * t * a + (1.0 - t) * (1.0 - t) * b);
}

}  // namespace

VerificationReport slq_f_convexity(double u, int grid_size) {
    if (!(u > 0.0)) throw std::invalid_argument("slq_f_convexity: require u > 0");
    if (grid_size < 3) throw std::invalid_argument("slq_f_convexity: grid too small");
    VerificationReport report;
    report.command = "slq_f_convexity";
    report.add_param("u", u);

    int k = 2;
    while ((1 << k) - 1 < grid_size && k < 24) ++k;
    const int denom_log = k;
    const int points = (1 << denom_log) - 1;
    report.add_param("grid_points", static_cast<std::int64_t>(points));
    const double h = std::ldexp(1.0, -denom_log);

    std::vector<double> values(points);
    for (int i = 1; i <= points; ++i) values[i - 1] = f_theta(u, i * h);

    double sym_residual = 0.0;
    for (int i = 1; i <= points; ++i) {
        const double mirrored = f_theta(u, 1.0 - i * h);
        sym_residual = std::max(sym_residual, std::abs(values[i - 1] - mirrored));
    }
    double min_second_diff = 0.0;
    bool first = true;
    for (int i = 1; i + 1 < points; ++i) {
        const double sd = values[i + 1] + values[i - 1] - 2.0 * values[i];
        if (first || sd < min_second_diff) min_second_diff = sd;
        first = false;
    }

    // f'' integral form on a coarse subgrid; GL-64 on [0,1] (smooth integrand).
    double min_fpp = 0.0;
    first = true;
    const auto& gl = quadrature::gauss_legendre(64);
    const int stride = std::max(1, points / 32);
    for (int i = 1; i <= points; i += stride) {
        const double theta = i * h;
        double integral = 0.0;
        for (int node = 0; node < 64; ++node) {
            const double t = 0.5 + 0.5 * gl.nodes[node];
            integral += 0.5 * gl.weights[node] * fpp_integrand(u, theta, t);
        }
        if (first || integral < min_fpp) min_fpp = integral;
        first = false;
    }

    report.check("symmetry_residual", sym_residual, 1e-12, sym_residual <= 1e-12);
    report.check("min_second_difference", min_second_diff, -1e-9, min_second_diff >= -1e-9);
    report.check("min_fpp_integral", min_fpp, -1e-9, min_fpp >= -1e-9);
    report.finalize();
    return report;
}

}  // namespace ncvx::hyper
