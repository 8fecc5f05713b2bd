#include "ncvx/convexity.hpp"

#include "ncvx/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace ncvx::convexity {

using matalg::schatten_norm;

namespace {

double sq(double v) { return v * v; }

DeficitResult assemble(double raw, const SchattenExponent& p, double scale,
                       std::vector<std::pair<std::string, double>> terms) {
    DeficitResult r;
    r.raw = raw;
    r.deficit = p.orientation_sign() * raw;
    r.terms = std::move(terms);
    r.p = p.value();
    r.scale = scale;
    return r;
}

// Spectral data shared by both oracle representations.
struct SpectralPair {
    Eigen::VectorXd lambda;   // eigenvalues of a, ascending
    Matrix b_rotated;         // U* b U
};

SpectralPair rotate(const Matrix& a, const Matrix& b) {
    matalg::HermitianEig eig = matalg::hermitian_eig(a);
    if (!matalg::is_selfadjoint(b)) {
        throw std::invalid_argument("psi_second_derivative: b must be self-adjoint");
    }
    return {eig.eigenvalues, eig.eigenvectors.adjoint() * b * eig.eigenvectors};
}

void require_oracle_p(const SchattenExponent& p) {
    if (!(p.value() < 2.0)) {
        throw std::invalid_argument("psi_second_derivative: require p < 2");
    }
    if (p.value() < kOracleMinP || p.value() > kOracleMaxP) {
        throw std::domain_error(
            "psi_second_derivative: p outside the certified quadrature window [1.05, 1.90]");
    }
}

// 1 / B(alpha) with the quadrature value authoritative, cross-checked
// against the reflection closed form.
double normalization_constant(double alpha) {
    const double quad = quadrature::beta_kernel_integral(alpha);
    const double closed = M_PI / std::sin(M_PI * alpha);
    if (std::abs(quad - closed) > 1e-8 * std::abs(closed)) {
        throw std::logic_error("normalization quadrature disagrees with the closed form");
    }
    return 1.0 / quad;
}

}  // namespace

DeficitResult bcl_deficit(const Matrix& x, const Matrix& y, const SchattenExponent& p) {
    if (x.rows() != y.rows() || x.cols() != y.cols() || x.size() == 0) {
        throw std::invalid_argument("bcl_deficit: dimension mismatch");
    }
    const double pv = p.value();
    const double n_sum = schatten_norm(x + y, pv);
    const double n_diff = schatten_norm(x - y, pv);
    const double n_x = schatten_norm(x, pv);
    const double n_y = schatten_norm(y, pv);
    const double scale = std::max({matalg::spectral_scale(x + y), matalg::spectral_scale(x - y),
                                   matalg::spectral_scale(x), matalg::spectral_scale(y)});
    std::vector<std::pair<std::string, double>> terms = {
        {"norm_sq_x_plus_y", sq(n_sum)},
        {"norm_sq_x_minus_y", sq(n_diff)},
        {"norm_sq_x", sq(n_x)},
        {"norm_sq_y", sq(n_y)},
    };
    const double raw = terms[0].second + terms[1].second - 2.0 * terms[2].second -
                       2.0 * (pv - 1.0) * terms[3].second;
    return assemble(raw, p, scale, std::move(terms));
}

DeficitResult martingale_deficit(const Matrix& x, const ExpectationSpec& e,
                                 const SchattenExponent& p) {
    const Matrix ex = e.apply(x);
    const Matrix diff = x - ex;
    const double pv = p.value();
    const double n_x = schatten_norm(x, pv);
    const double n_ex = schatten_norm(ex, pv);
    const double n_diff = schatten_norm(diff, pv);
    const double scale = std::max({matalg::spectral_scale(x), matalg::spectral_scale(ex),
                                   matalg::spectral_scale(diff)});
    std::vector<std::pair<std::string, double>> terms = {
        {"norm_sq_x", sq(n_x)},
        {"norm_sq_Ex", sq(n_ex)},
        {"norm_sq_x_minus_Ex", sq(n_diff)},
    };
    const double raw =
        terms[0].second - terms[1].second - (pv - 1.0) * terms[2].second;
    return assemble(raw, p, scale, std::move(terms));
}

DeficitResult filtration_deficit(const Matrix& x, const Filtration& f,
                                 const SchattenExponent& p) {
    if (f.specs.empty()) {
        throw std::invalid_argument("filtration_deficit: empty filtration");
    }
    if (!f.specs.back().is_identity()) {
        throw std::invalid_argument("filtration_deficit: last spec must be the identity expectation");
    }
    const double pv = p.value();
    std::vector<Matrix> ex;
    ex.reserve(f.specs.size());
    for (const ExpectationSpec& e : f.specs) ex.push_back(e.apply(x));

    double scale = matalg::spectral_scale(x);
    std::vector<std::pair<std::string, double>> terms = {
        {"norm_sq_x", sq(schatten_norm(x, pv))},
        {"norm_sq_E0x", sq(schatten_norm(ex.front(), pv))},
    };
    double increments = 0.0;
    for (std::size_t n = 1; n < ex.size(); ++n) {
        const Matrix d = ex[n] - ex[n - 1];
        const double nd = schatten_norm(d, pv);
        scale = std::max(scale, matalg::spectral_scale(d));
        terms.emplace_back("norm_sq_increment_" + std::to_string(n), sq(nd));
        increments += sq(nd);
    }
    const double raw = terms[0].second - terms[1].second - (pv - 1.0) * increments;
    return assemble(raw, p, scale, std::move(terms));
}

DeficitResult sign_pattern_deficit(const Matrix& x, const std::vector<ExpectationSpec>& specs,
                                   const SchattenExponent& p) {
    const std::size_t n_specs = specs.size();
    if (n_specs == 0 || n_specs > 12) {
        throw std::invalid_argument("sign_pattern_deficit: need 1..12 specs");
    }
    for (const ExpectationSpec& e : specs) {
        if (e.dim() != x.rows()) {
            throw std::invalid_argument("sign_pattern_deficit: dimension mismatch");
        }
    }
    const double pv = p.value();

    // Expand the 2^N sign patterns by splitting on the specs in reverse
    // index order, so the composite E_1^(e1) ... E_N^(eN) acts with E_N
    // innermost. Each node carries the count of minus signs.
    struct Node {
        Matrix value;
        int minus = 0;
    };
    std::vector<Node> layer{{x, 0}};
    for (std::size_t rev = n_specs; rev-- > 0;) {
        std::vector<Node> next;
        next.reserve(layer.size() * 2);
        for (const Node& node : layer) {
            Matrix plus = specs[rev].apply(node.value);
            next.push_back({node.value - plus, node.minus + 1});
            next.push_back({std::move(plus), node.minus});
        }
        layer = std::move(next);
    }

    double weighted_sum = 0.0;
    double scale = matalg::spectral_scale(x);
    for (const Node& node : layer) {
        weighted_sum += std::pow(pv - 1.0, node.minus) * sq(schatten_norm(node.value, pv));
    }
    std::vector<std::pair<std::string, double>> terms = {
        {"norm_sq_x", sq(schatten_norm(x, pv))},
        {"weighted_pattern_sum", weighted_sum},
    };
    const double raw = terms[0].second - terms[1].second;
    return assemble(raw, p, scale, std::move(terms));
}

double psi_second_derivative(const Matrix& a, const Matrix& b, const SchattenExponent& p,
                             double quad_reltol) {
    require_oracle_p(p);
    const double pv = p.value();
    SpectralPair sp = rotate(a, b);
    const int n = static_cast<int>(sp.lambda.size());
    const double scale = std::max(1.0, sp.lambda.cwiseAbs().maxCoeff());
    if (sp.lambda.cwiseAbs().minCoeff() <= 1e-6 * scale) {
        throw std::invalid_argument("psi_second_derivative: a is too close to singular");
    }

    // First term: p tau(|a|^(p-2) b^2).
    double first = 0.0;
    for (int i = 0; i < n; ++i) {
        first += std::pow(std::abs(sp.lambda(i)), pv - 2.0) * sp.b_rotated.row(i).squaredNorm();
    }

    // Second term: the resolvent integral of tau[(s+a^2)^-1 M (s+a^2)^-1 M]
    // with M = ab + ba, evaluated on the spectral weights |M~_ij|^2.
    Eigen::MatrixXd w(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            w(i, j) = std::norm((sp.lambda(i) + sp.lambda(j)) * sp.b_rotated(i, j));
        }
    }
    Eigen::VectorXd lam_sq = sp.lambda.cwiseProduct(sp.lambda);
    const double alpha = pv / 2.0;
    auto head = [&](double s) {
        double g = 0.0;
        for (int i = 0; i < n; ++i) {
            const double di = 1.0 / (s + lam_sq(i));
            for (int j = 0; j < n; ++j) {
                g += w(i, j) * di / (s + lam_sq(j));
            }
        }
        return std::pow(s, alpha - 1.0) * g;
    };
    // The s -> 1/t image of the integrand, with the t^2 Jacobian absorbed
    // into the resolvents so deep panels stay finite.
    auto folded_tail = [&](double t) {
        double g = 0.0;
        for (int i = 0; i < n; ++i) {
            const double di = 1.0 / (1.0 + t * lam_sq(i));
            for (int j = 0; j < n; ++j) {
                g += w(i, j) * di / (1.0 + t * lam_sq(j));
            }
        }
        return std::pow(t, 1.0 - alpha) * g;
    };
    const double integral = quadrature::integrate_zero_inf_split(
        head, folded_tail, alpha - 1.0, 3.0 - alpha, quad_reltol);
    const double c_p = normalization_constant(alpha);
    return pv * first - 0.5 * pv * c_p * integral;
}

double psi_second_derivative_positive(const Matrix& a, const Matrix& b,
                                      const SchattenExponent& p, double quad_reltol) {
    require_oracle_p(p);
    const double pv = p.value();
    SpectralPair sp = rotate(a, b);
    const int n = static_cast<int>(sp.lambda.size());
    const double scale = std::max(1.0, sp.lambda.cwiseAbs().maxCoeff());
    if (sp.lambda.minCoeff() <= 1e-6 * scale) {
        throw std::invalid_argument("psi_second_derivative_positive: a must be positive definite");
    }

    Eigen::MatrixXd w(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) w(i, j) = std::norm(sp.b_rotated(i, j));
    }
    auto head = [&](double s) {
        double g = 0.0;
        for (int i = 0; i < n; ++i) {
            const double di = 1.0 / (s + sp.lambda(i));
            for (int j = 0; j < n; ++j) {
                g += w(i, j) * di / (s + sp.lambda(j));
            }
        }
        return std::pow(s, pv - 1.0) * g;
    };
    auto folded_tail = [&](double t) {
        double g = 0.0;
        for (int i = 0; i < n; ++i) {
            const double di = 1.0 / (1.0 + t * sp.lambda(i));
            for (int j = 0; j < n; ++j) {
                g += w(i, j) * di / (1.0 + t * sp.lambda(j));
            }
        }
        return std::pow(t, 1.0 - pv) * g;
    };
    const double integral = quadrature::integrate_zero_inf_split(
        head, folded_tail, pv - 2.0, 3.0 - pv, quad_reltol);
    const double d_p = normalization_constant(pv - 1.0);
    return pv * d_p * integral;
}

double psi_second_derivative_fd(const Matrix& a, const Matrix& b, const SchattenExponent& p) {
    const double pv = p.value();
    auto psi = [&](double t) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(a + t * b, Eigen::EigenvaluesOnly);
        double acc = 0.0;
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
            acc += std::pow(std::abs(es.eigenvalues()(i)), pv);
        }
        return acc;
    };
    const double psi0 = psi(0.0);
    auto central = [&](double h) { return (psi(h) + psi(-h) - 2.0 * psi0) / (h * h); };
    const double d1 = central(1e-3);
    const double d2 = central(1e-4);
    return (100.0 * d2 - d1) / 99.0;  // cancels the h^2 error term
}

VerificationReport df1_check(const Matrix& a, const Matrix& b, const SchattenExponent& p,
                             double tol) {
    VerificationReport report;
    report.command = "df1_check";
    report.add_param("p", p.value());
    const double pv = p.value();
    const double psi2 = psi_second_derivative(a, b, p);
    const double norm_a = schatten_norm(a, pv);
    const double norm_b = schatten_norm(b, pv);
    const double lhs = (1.0 / pv) * std::pow(norm_a, 2.0 - pv) * psi2;
    const double rhs = (pv - 1.0) * sq(norm_b);
    const double scale = std::max(matalg::spectral_scale(a), matalg::spectral_scale(b));
    report.check("lhs_minus_rhs", lhs - rhs, -tol * sq(scale), lhs >= rhs - tol * sq(scale));
    report.check("lhs", lhs, rhs, true);
    report.check("rhs", rhs, lhs, true);
    report.finalize();
    return report;
}

VerificationReport sharpness_probe(const SchattenExponent& p, double c, double t_max,
                                   int steps) {
    if (p.value() > 2.0) {
        throw std::invalid_argument("sharpness_probe: require 1 < p <= 2");
    }
    if (!(c > 0.0) || !(t_max > 0.0) || t_max >= 1.0 || steps < 2) {
        throw std::invalid_argument("sharpness_probe: need c > 0, 0 < t_max < 1, steps >= 2");
    }
    const double pv = p.value();
    VerificationReport report;
    report.command = "sharpness_probe";
    report.add_param("p", pv);
    report.add_param("c", c);
    report.add_param("t_max", t_max);
    report.add_param("steps", static_cast<std::int64_t>(steps));

    // Descending geometric grid from t_max to t_min ~ 1e-3; small enough
    // that the t^2 remainder is visible, large enough that the squared-norm
    // cancellation stays well above double noise.
    const double t_min = std::min(1e-3, t_max / 4.0);
    const double ratio_step = std::pow(t_min / t_max, 1.0 / (steps - 1));

    // Two-point family: ||x +- y||_p^p = (1+t)^p + (1-t)^p,
    // ||x||_p^2 = 2^(2/p), ||y||_p^2 = 2^(2/p) t^2.
    auto expr = [pv, c](double t) {
        const double mixed = std::pow(std::pow(1.0 + t, pv) + std::pow(1.0 - t, pv), 2.0 / pv);
        const double two_pow = std::pow(2.0, 2.0 / pv);
        return 2.0 * mixed - 2.0 * two_pow - 2.0 * c * two_pow * t * t;
    };

    double final_ratio = 0.0;
    double min_expr_small_t = 0.0;
    double t = t_max;
    for (int i = 0; i < steps; ++i) {
        const double v = expr(t);
        final_ratio = v / (t * t);
        if (t <= 0.05) min_expr_small_t = std::min(min_expr_small_t, v);
        t *= ratio_step;
    }

    if (std::abs(c - (pv - 1.0)) < 1e-12) {
        report.check("ratio_at_smallest_t", std::abs(final_ratio), 1e-3,
                     std::abs(final_ratio) <= 1e-3);
    } else if (c > pv - 1.0) {
        report.check("violation_found_at_small_t", min_expr_small_t, 0.0,
                     min_expr_small_t < -1e-14);
    } else {
        // Constant below the sharp one: the expression keeps its sign.
        report.check("expression_nonnegative", min_expr_small_t, 0.0,
                     min_expr_small_t >= -1e-14);
    }
    report.finalize();
    return report;
}

}  // namespace ncvx::convexity
