#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ncvx/matalg.hpp"
#include "ncvx/rng.hpp"

#include <cmath>

using namespace ncvx;
using matalg::Complex;
using matalg::Matrix;

namespace {

Matrix diag3(double a, double b, double c) {
    Matrix m = Matrix::Zero(3, 3);
    m(0, 0) = a;
    m(1, 1) = b;
    m(2, 2) = c;
    return m;
}

}  // namespace

TEST_CASE("hermitian_eig on diagonal and flip matrices") {
    const matalg::HermitianEig eig = matalg::hermitian_eig(diag3(3, 1, 2));
    CHECK(eig.eigenvalues(0) == doctest::Approx(1.0));
    CHECK(eig.eigenvalues(1) == doctest::Approx(2.0));
    CHECK(eig.eigenvalues(2) == doctest::Approx(3.0));

    Matrix flip(2, 2);
    flip << 0, 1, 1, 0;
    const matalg::HermitianEig f = matalg::hermitian_eig(flip);
    CHECK(f.eigenvalues(0) == doctest::Approx(-1.0));
    CHECK(f.eigenvalues(1) == doctest::Approx(1.0));
}

TEST_CASE("hermitian_eig reconstruction residual on random input") {
    auto gen = rng::engine_for(42, 0);
    const Matrix m = rng::gue(6, gen);
    const matalg::HermitianEig eig = matalg::hermitian_eig(m);
    const Matrix rebuilt = eig.eigenvectors *
                           eig.eigenvalues.cast<Complex>().asDiagonal() *
                           eig.eigenvectors.adjoint();
    CHECK((rebuilt - m).norm() / m.norm() <= 1e-12);
    const Matrix gram = eig.eigenvectors.adjoint() * eig.eigenvectors;
    CHECK((gram - Matrix::Identity(6, 6)).norm() <= 1e-12);
}

TEST_CASE("hermitian_eig rejects non-selfadjoint input") {
    Matrix m(2, 2);
    m << 0, 1, 0, 0;
    CHECK_THROWS_AS(matalg::hermitian_eig(m), std::invalid_argument);
}

TEST_CASE("schatten norms on closed-form inputs") {
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
        CHECK(matalg::schatten_norm(Matrix::Identity(5, 5), p) ==
              doctest::Approx(std::pow(5.0, 1.0 / p)));
    }
    CHECK(matalg::schatten_norm(Matrix::Identity(5, 5),
                                std::numeric_limits<double>::infinity()) ==
          doctest::Approx(1.0));

    Matrix nilpotent(2, 2);
    nilpotent << 0, 1, 0, 0;
    for (double p : {1.0, 1.3, 2.0, 4.0}) {
        CHECK(matalg::schatten_norm(nilpotent, p) == doctest::Approx(1.0));
    }

    Matrix d(2, 2);
    d << 3, 0, 0, 4;
    CHECK(matalg::schatten_norm(d, 2.0) == doctest::Approx(5.0));
}

TEST_CASE("trace basics and cyclicity") {
    CHECK(matalg::trace(Matrix::Identity(4, 4)).real() == doctest::Approx(4.0));
    Matrix nilpotent(2, 2);
    nilpotent << 0, 1, 0, 0;
    CHECK(std::abs(matalg::trace(nilpotent)) <= 1e-15);

    auto gen = rng::engine_for(7, 0);
    const Matrix a = rng::ginibre(5, gen);
    const Matrix b = rng::ginibre(5, gen);
    const double scale = std::max(1.0, (a * b).cwiseAbs().maxCoeff());
    CHECK(std::abs(matalg::trace(a * b) - matalg::trace(b * a)) <= 1e-12 * scale);
}

TEST_CASE("selfadjoint dilation doubles the p-th power of the norm") {
    Matrix one(1, 1);
    one << 1;
    auto [a, b] = matalg::selfadjoint_dilation(one, one);
    CHECK(a(0, 1).real() == doctest::Approx(1.0));
    CHECK(a(1, 0).real() == doctest::Approx(1.0));
    CHECK(std::abs(a(0, 0)) + std::abs(a(1, 1)) <= 1e-15);
    for (double p : {1.5, 2.0, 3.0}) {
        CHECK(std::pow(matalg::schatten_norm(a, p), p) == doctest::Approx(2.0));
    }

    auto [za, zb] = matalg::selfadjoint_dilation(Matrix::Zero(2, 2), Matrix::Zero(2, 2));
    CHECK(za.norm() == 0.0);

    auto gen = rng::engine_for(11, 0);
    const Matrix x = rng::ginibre(3, gen);
    const Matrix y = rng::ginibre(3, gen);
    auto [dx, dy] = matalg::selfadjoint_dilation(x, y);
    const double p = 1.5;
    const double ratio = std::pow(matalg::schatten_norm(dx, p), p) /
                         std::pow(matalg::schatten_norm(x, p), p);
    CHECK(ratio == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(matalg::is_selfadjoint(dx));
    CHECK(matalg::is_selfadjoint(dy));
}

TEST_CASE("psd_power closed forms and roundtrip") {
    for (double alpha : {-1.0, -0.5, 0.5, 2.0}) {
        const Matrix r = matalg::psd_power(Matrix::Identity(3, 3), alpha);
        CHECK((r - Matrix::Identity(3, 3)).norm() <= 1e-13);
    }
    Matrix d(2, 2);
    d << 4, 0, 0, 9;
    const Matrix root = matalg::psd_power(d, 0.5);
    CHECK(root(0, 0).real() == doctest::Approx(2.0));
    CHECK(root(1, 1).real() == doctest::Approx(3.0));

    auto gen = rng::engine_for(3, 0);
    const Matrix m = rng::random_psd(4, gen);
    const Matrix back = matalg::psd_power(matalg::psd_power(m, 1.0 / 3.0), 3.0);
    CHECK((back - m).norm() <= 1e-10 * std::max(1.0, m.norm()));

    const Matrix inv_check =
        matalg::psd_power(m + Matrix::Identity(4, 4), 1.0) *
        matalg::psd_power(m + Matrix::Identity(4, 4), -1.0);
    CHECK((inv_check - Matrix::Identity(4, 4)).norm() <= 1e-10);
}

TEST_CASE("psd_power rejects bad inputs") {
    Matrix neg(2, 2);
    neg << -1, 0, 0, 1;
    CHECK_THROWS_AS(matalg::psd_power(neg, 0.5), std::invalid_argument);
    Matrix singular(2, 2);
    singular << 1, 0, 0, 0;
    CHECK_THROWS_AS(matalg::psd_power(singular, -1.0), std::invalid_argument);
}

TEST_CASE("parallelogram law at p = 2") {
    for (int trial = 0; trial < 50; ++trial) {
        auto gen = rng::engine_for(100, trial);
        const Matrix x = rng::ginibre(4, gen);
        const Matrix y = rng::ginibre(4, gen);
        const double lhs = std::pow(matalg::schatten_norm(x + y, 2.0), 2) +
                           std::pow(matalg::schatten_norm(x - y, 2.0), 2);
        const double rhs = 2 * std::pow(matalg::schatten_norm(x, 2.0), 2) +
                           2 * std::pow(matalg::schatten_norm(y, 2.0), 2);
        const double scale = std::max({1.0, matalg::singular_values(x)(0),
                                       matalg::singular_values(y)(0)});
        CHECK(std::abs(lhs - rhs) <= 1e-10 * scale * scale);
    }
}

TEST_CASE("unitary invariance of schatten norms") {
    for (int trial = 0; trial < 20; ++trial) {
        auto gen = rng::engine_for(200, trial);
        const Matrix x = rng::ginibre(5, gen);
        const Matrix u = rng::random_unitary(5, gen);
        const Matrix v = rng::random_unitary(5, gen);
        for (double p : {1.0, 1.4, 2.0, 3.7}) {
            const double lhs = matalg::schatten_norm(u * x * v, p);
            const double rhs = matalg::schatten_norm(x, p);
            CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, rhs));
        }
    }
}

TEST_CASE("Hoelder inequality |tr(xy)| <= ||x||_p ||y||_p'") {
    for (int trial = 0; trial < 50; ++trial) {
        auto gen = rng::engine_for(300, trial);
        const Matrix x = rng::ginibre(4, gen);
        const Matrix y = rng::ginibre(4, gen);
        for (double p : {1.2, 1.5, 2.0, 3.0}) {
            const double q = p / (p - 1.0);
            const double lhs = std::abs(matalg::trace(x * y));
            const double rhs = matalg::schatten_norm(x, p) * matalg::schatten_norm(y, q);
            CHECK(lhs <= rhs * (1.0 + 1e-12) + 1e-12);
        }
    }
}

TEST_CASE("is_psd accepts gram matrices, rejects indefinite") {
    auto gen = rng::engine_for(400, 0);
    CHECK(matalg::is_psd(rng::random_psd(5, gen)));
    Matrix indefinite(2, 2);
    indefinite << 1, 0, 0, -1;
    CHECK_FALSE(matalg::is_psd(indefinite));
}
