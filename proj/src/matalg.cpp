#include "ncvx/matalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace ncvx::matalg {

namespace {

void require_square(const Matrix& m, const char* who) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument(std::string(who) + ": matrix must be square");
    }
    if (!all_finite(m)) {
        throw std::invalid_argument(std::string(who) + ": entries must be finite");
    }
}

}  // namespace

bool all_finite(const Matrix& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            const Complex& z = m(i, j);
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        }
    }
    return true;
}

double spectral_scale(const Matrix& m) {
    if (m.size() == 0) return 1.0;
    RealVector s = singular_values(m);
    return std::max(1.0, s(0));
}

bool is_selfadjoint(const Matrix& m, double tol) {
    if (m.rows() != m.cols() || !all_finite(m)) return false;
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    double worst = 0.0;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i <= j; ++i) {
            worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
        }
    }
    return worst <= tol * scale;
}

bool is_psd(const Matrix& m, double tol) {
    if (!is_selfadjoint(m, tol)) return false;
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    return es.eigenvalues()(0) >= -tol * scale;
}

HermitianEig hermitian_eig(const Matrix& m, double tol) {
    require_square(m, "hermitian_eig");
    if (!is_selfadjoint(m, tol)) {
        throw std::invalid_argument("hermitian_eig: input is not self-adjoint");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("hermitian_eig: eigensolver failed to converge");
    }
    return {es.eigenvalues(), es.eigenvectors()};
}

RealVector singular_values(const Matrix& m) {
    if (m.rows() == m.cols() && is_selfadjoint(m, 1e-12)) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
        RealVector s = es.eigenvalues().cwiseAbs();
        std::sort(s.data(), s.data() + s.size(), std::greater<double>());
        return s;
    }
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues();
}

double schatten_norm(const Matrix& m, double p) {
    if (!all_finite(m)) {
        throw std::invalid_argument("schatten_norm: entries must be finite");
    }
    if (!(p >= 1.0)) {
        throw std::invalid_argument("schatten_norm: require p >= 1");
    }
    RealVector s = singular_values(m);
    if (s.size() == 0) return 0.0;
    if (std::isinf(p)) return s(0);
    if (p == 1.0) return s.sum();
    if (p == 2.0) return std::sqrt(s.squaredNorm());
    // Factor out the largest singular value so intermediate powers stay tame.
    const double top = s(0);
    if (top == 0.0) return 0.0;
    double acc = 0.0;
    for (Eigen::Index i = 0; i < s.size(); ++i) acc += std::pow(s(i) / top, p);
    return top * std::pow(acc, 1.0 / p);
}

double schatten_norm(const Matrix& m, const SchattenExponent& p) {
    return schatten_norm(m, p.value());
}

Complex trace(const Matrix& m) {
    require_square(m, "trace");
    return m.trace();
}

std::pair<Matrix, Matrix> selfadjoint_dilation(const Matrix& x, const Matrix& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols() || x.rows() != x.cols()) {
        throw std::invalid_argument("selfadjoint_dilation: need square matrices of equal dimension");
    }
    const Eigen::Index n = x.rows();
    Matrix a = Matrix::Zero(2 * n, 2 * n);
    Matrix b = Matrix::Zero(2 * n, 2 * n);
    a.block(0, n, n, n) = x;
    a.block(n, 0, n, n) = x.adjoint();
    b.block(0, n, n, n) = y;
    b.block(n, 0, n, n) = y.adjoint();
    return {std::move(a), std::move(b)};
}

Matrix psd_power(const Matrix& m, double alpha, double tol) {
    HermitianEig eig = hermitian_eig(m, tol);
    const double scale = std::max(1.0, eig.eigenvalues.cwiseAbs().maxCoeff());
    RealVector lam = eig.eigenvalues;
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
        if (std::abs(lam(i)) < 1e-13 * scale) lam(i) = 0.0;
    }
    if (lam(0) < -tol * scale) {
        throw std::invalid_argument("psd_power: input has a negative eigenvalue");
    }
    if (alpha < 0.0 && lam(0) <= tol * scale) {
        throw std::invalid_argument("psd_power: singular input with negative exponent");
    }
    RealVector powered(lam.size());
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
        const double l = std::max(lam(i), 0.0);
        powered(i) = (l == 0.0) ? 0.0 : std::pow(l, alpha);
    }
    return eig.eigenvectors * powered.asDiagonal() * eig.eigenvectors.adjoint();
}

Matrix selfadjoint_abs(const Matrix& a, double tol) {
    HermitianEig eig = hermitian_eig(a, tol);
    RealVector lam = eig.eigenvalues.cwiseAbs();
    return eig.eigenvectors * lam.asDiagonal() * eig.eigenvectors.adjoint();
}

}  // namespace ncvx::matalg
