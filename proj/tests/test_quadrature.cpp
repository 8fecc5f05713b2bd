#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ncvx/quadrature.hpp"

#include <cmath>

using namespace ncvx;

TEST_CASE("gauss-legendre nodes integrate polynomials exactly") {
    const auto& gl = quadrature::gauss_legendre(16);
    double total = 0.0;
    for (int i = 0; i < 16; ++i) {
        const double x = gl.nodes[i];
        total += gl.weights[i] * (5.0 * x * x * x * x + x * x - 2.0 * x + 1.0);
    }
    // int_-1^1 = 2 + 2/3 + 2
    CHECK(total == doctest::Approx(2.0 + 2.0 / 3.0 + 2.0).epsilon(1e-14));
}

TEST_CASE("graded panels resolve algebraic endpoint singularities") {
    // int_0^1 t^(a-1) dt = 1/a
    for (double a : {0.1, 0.3, 0.55, 0.9}) {
        const double v = quadrature::integrate_unit_graded(
            [a](double t) { return std::pow(t, a - 1.0); }, a - 1.0, 1e-11);
        CHECK(v == doctest::Approx(1.0 / a).epsilon(1e-10));
    }
}

TEST_CASE("fold handles slowly decaying tails") {
    // int_0^inf s^(a-1)/(1+s)^2 ds = (1-a) pi / sin(pi a)
    for (double a : {0.55, 0.75, 0.95}) {
        const double v = quadrature::integrate_zero_inf(
            [a](double s) { return std::pow(s, a - 1.0) / ((1.0 + s) * (1.0 + s)); },
            a - 1.0, 3.0 - a, 1e-11);
        const double exact = (1.0 - a) * M_PI / std::sin(M_PI * a);
        CHECK(v == doctest::Approx(exact).epsilon(1e-9));
    }
}

TEST_CASE("beta kernel matches the reflection formula across the window") {
    for (double a : {0.05, 0.1, 0.25, 0.5, 0.6, 0.75, 0.9, 0.95}) {
        const double v = quadrature::beta_kernel_integral(a);
        const double exact = M_PI / std::sin(M_PI * a);
        CHECK(v == doctest::Approx(exact).epsilon(1e-10));
    }
}

TEST_CASE("invalid exponents are rejected") {
    CHECK_THROWS_AS(quadrature::integrate_unit_graded([](double) { return 1.0; }, -1.5, 1e-9),
                    std::invalid_argument);
    CHECK_THROWS_AS(quadrature::beta_kernel_integral(1.5), std::invalid_argument);
}
