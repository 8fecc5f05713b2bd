// matalg.hpp — Complex matrix arithmetic, hermitian spectral decomposition,
// traces and Schatten p-norms: the finite-dimensional model of (M, tau, L_p).

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <limits>
#include <stdexcept>
#include <utility>

namespace ncvx::matalg {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kDefaultTol = 1e-9;

/// Schatten exponent p with 1 < p < inf. For p <= 2 the convexity
/// inequalities hold as written ("direct"); for p > 2 they are reversed.
class SchattenExponent {
public:
    explicit SchattenExponent(double p) : p_(p) {
        if (!(p > 1.0) || !std::isfinite(p)) {
            throw std::invalid_argument("SchattenExponent: require 1 < p < inf");
        }
    }
    double value() const { return p_; }
    bool reversed() const { return p_ > 2.0; }
    double orientation_sign() const { return reversed() ? -1.0 : 1.0; }

private:
    double p_;
};

// Scale convention used by all tolerance checks: max(1, largest singular
// value involved). Entrywise max-abs upper-bounds are fine for detecting
// non-finiteness; norms below use true singular values.
bool all_finite(const Matrix& m);

double spectral_scale(const Matrix& m);

bool is_selfadjoint(const Matrix& m, double tol = kDefaultTol);

bool is_psd(const Matrix& m, double tol = kDefaultTol);

struct HermitianEig {
    RealVector eigenvalues;  // ascending
    Matrix eigenvectors;     // unitary, columns
};

/// Spectral decomposition of a self-adjoint matrix. Throws if the input is
/// not square, not finite, or not self-adjoint within tolerance.
HermitianEig hermitian_eig(const Matrix& m, double tol = kDefaultTol);

/// Singular values, descending. Uses the hermitian eigenproblem when the
/// input is self-adjoint, otherwise an SVD.
RealVector singular_values(const Matrix& m);

/// Schatten p-norm (sum_i s_i^p)^(1/p) for p in [1, inf); max s_i for
/// p = inf. Standard (non-normalized) trace convention.
double schatten_norm(const Matrix& m, double p);
double schatten_norm(const Matrix& m, const SchattenExponent& p);

Complex trace(const Matrix& m);

/// The 2x2 self-adjoint dilation: a = [[0,x],[x*,0]], b = [[0,y],[y*,0]].
/// Satisfies ||a||_p^p = 2 ||x||_p^p.
std::pair<Matrix, Matrix> selfadjoint_dilation(const Matrix& x, const Matrix& y);

/// Functional calculus m -> U diag(lambda^alpha) U* for psd m. Eigenvalues
/// with |lambda| < 1e-13 * scale are clipped to zero; alpha < 0 requires the
/// smallest eigenvalue to exceed tol * scale.
Matrix psd_power(const Matrix& m, double alpha, double tol = kDefaultTol);

/// |a| = (a^2)^(1/2) for self-adjoint a, via the spectral decomposition.
Matrix selfadjoint_abs(const Matrix& a, double tol = kDefaultTol);

}  // namespace ncvx::matalg
