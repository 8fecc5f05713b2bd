// convexity.hpp — deficit verifiers for the sharp noncommutative convexity
// inequalities, sharpness probes for the constant (p-1), and the resolvent-
// integral second-derivative oracle.

#pragma once

#include "ncvx/condexp.hpp"
#include "ncvx/matalg.hpp"
#include "ncvx/report.hpp"

#include <string>
#include <utility>
#include <vector>

namespace ncvx::convexity {

using condexp::ExpectationSpec;
using condexp::Filtration;
using matalg::Matrix;
using matalg::SchattenExponent;

/// Orientation-adjusted deficit: >= 0 means the inequality holds in the
/// orientation belonging to p. `raw` is the signed expression in its p <= 2
/// writing; `deficit` is assembled exactly from `terms`.
struct DeficitResult {
    double deficit = 0.0;
    double raw = 0.0;
    std::vector<std::pair<std::string, double>> terms;  // named squared norms
    double p = 0.0;
    double scale = 1.0;
};

/// ||x+y||_p^2 + ||x-y||_p^2 - 2||x||_p^2 - 2(p-1)||y||_p^2, sign-flipped
/// for p > 2.
DeficitResult bcl_deficit(const Matrix& x, const Matrix& y, const SchattenExponent& p);

/// ||x||_p^2 - ||E(x)||_p^2 - (p-1)||x - E(x)||_p^2, sign-flipped for p > 2.
DeficitResult martingale_deficit(const Matrix& x, const ExpectationSpec& e,
                                 const SchattenExponent& p);

/// ||x||_p^2 - ||E_0(x)||_p^2 - (p-1) sum_n ||E_n(x) - E_(n-1)(x)||_p^2 for
/// an increasing chain whose last expectation is the identity.
DeficitResult filtration_deficit(const Matrix& x, const Filtration& f,
                                 const SchattenExponent& p);

/// ||x||_p^2 - sum over sign patterns eps in {+,-}^N of
/// (p-1)^(#minus) ||(prod_i E_i^(eps_i))(x)||_p^2, products applied in index
/// order (E_N acts on x first). At most 12 specs (2^N terms).
DeficitResult sign_pattern_deficit(const Matrix& x, const std::vector<ExpectationSpec>& specs,
                                   const SchattenExponent& p);

// Certified window for the quadrature oracle below; outside it the
// normalization or the folded tail cannot be resolved to 1e-9 in doubles.
inline constexpr double kOracleMinP = 1.05;
inline constexpr double kOracleMaxP = 1.90;

/// psi''(0) for psi(t) = ||a + t b||_p^p with a self-adjoint invertible and
/// b self-adjoint, 1 < p < 2, by the resolvent integral representation of
/// (a^2 + t(ab+ba) + t^2 b^2)^(p/2 - 1). The normalization constant is
/// computed by quadrature and cross-checked against sin(pi p/2)/pi.
double psi_second_derivative(const Matrix& a, const Matrix& b, const SchattenExponent& p,
                             double quad_reltol = 1e-10);

/// Same quantity for positive definite a via the representation of
/// (a + t b)^(p-1); agrees with psi_second_derivative on positive inputs.
double psi_second_derivative_positive(const Matrix& a, const Matrix& b,
                                      const SchattenExponent& p,
                                      double quad_reltol = 1e-10);

/// Independent reference for psi''(0): central second differences of
/// psi(t) = sum_i |lambda_i(a + t b)|^p at h in {1e-3, 1e-4} with Richardson
/// extrapolation. Shares nothing with the quadrature path.
double psi_second_derivative_fd(const Matrix& a, const Matrix& b, const SchattenExponent& p);

/// Checks (1/p) ||a||_p^(2-p) psi''(0) >= (p-1) ||b||_p^2 - tol scale^2.
VerificationReport df1_check(const Matrix& a, const Matrix& b, const SchattenExponent& p,
                             double tol = matalg::kDefaultTol);

/// Two-point sharpness probe for the constant (p-1): x = (1,1), y = (t,-t)
/// as diagonal matrices, deficit(t)/t^2 over a descending geometric t-grid.
/// With c = p-1 the ratio must vanish as t -> 0; with any larger c the
/// expression must go negative at small t.
VerificationReport sharpness_probe(const SchattenExponent& p, double c, double t_max,
                                   int steps);

}  // namespace ncvx::convexity
