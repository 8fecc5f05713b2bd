// quadrature.hpp — composite Gauss-Legendre integration for the resolvent
// integrals behind the second-derivative oracle: algebraic endpoint
// singularities on (0,1], and improper integrals over (0,inf) reduced to
// (0,1] by the s -> 1/s fold.

#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

namespace ncvx::quadrature {

struct GaussLegendre {
    std::vector<double> nodes;    // on (-1, 1)
    std::vector<double> weights;
};

/// Nodes/weights for a given order, computed by Newton iteration on the
/// Legendre recurrence and cached per order.
const GaussLegendre& gauss_legendre(int order);

/// Integral over (0,1] of an integrand behaving like t^(head_exponent) near
/// t = 0 with head_exponent > -1. Geometric decade panels toward 0, GL order
/// doubled (16..128) until successive totals agree to reltol.
double integrate_unit_graded(const std::function<double(double)>& f,
                             double head_exponent, double reltol);

/// Integral over (0,inf) of f with f ~ s^head_exponent near 0
/// (head_exponent > -1) and f ~ C s^(-decay_exponent) near infinity
/// (decay_exponent > 1). Folded to (0,1] via s -> 1/s. The literal fold
/// f(1/t)/t^2 underflows once panels reach t < 1e-150, so this form is only
/// for exponent pairs with min(1+head, decay-1) >= 0.1.
double integrate_zero_inf(const std::function<double(double)>& f,
                          double head_exponent, double decay_exponent,
                          double reltol = 1e-10);

/// Same integral with the tail supplied analytically: folded_tail(t) must
/// equal f(1/t)/t^2, rewritten so that it stays finite for t down to the
/// deepest panel. folded_tail ~ t^(decay_exponent - 2) near 0.
double integrate_zero_inf_split(const std::function<double(double)>& head,
                                const std::function<double(double)>& folded_tail,
                                double head_exponent, double decay_exponent,
                                double reltol = 1e-10);

/// The Beta-type kernel integral B(alpha) = int_0^inf s^(alpha-1)/(1+s) ds
/// for alpha in (0,1), with the endpoint powers integrated analytically so
/// that alpha near 0 or 1 stays accurate. Closed form: pi / sin(pi alpha).
double beta_kernel_integral(double alpha, double reltol = 1e-11);

}  // namespace ncvx::quadrature
