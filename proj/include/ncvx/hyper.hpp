// hyper.hpp — the numerical certification layer for free-group
// hypercontractivity: Khintchine upper bounds, the R_q series with
// certified geometric tails, q0 and eps0, direct semigroup checks, the
// growth-condition time bound, and the log-Sobolev f-convexity test.

#pragma once

#include "ncvx/report.hpp"

#include <cstdint>

namespace ncvx::hyper {

/// A series value that is never reported as a bare truncation: the usable
/// number is partial_sum + tail_bound with a certified geometric majorant.
struct SeriesBound {
    double q = 0.0;
    double partial_sum = 0.0;
    double tail_bound = 0.0;
    int terms_used = 0;
    double value_upper() const { return partial_sum + tail_bound; }
};

struct GrowthParams {
    double C;    // > 0
    double rho;  // > 1
};

/// Khintchine constant upper bound: (k+1)^(1 - 3/q) for q >= 4,
/// (k+1)^(1/2 - 1/q) for 2 <= q <= 4 (continuous at q = 4).
double khintchine_upper(int k, double q);

/// R_q = (q-1) sum_(k>=2) khintchine_upper(k,q)^2 (q-1)^(-k), summed until
/// the geometric tail majorant drops below tol.
SeriesBound rq_value(double q, double tol = 1e-9);

/// q0 = sqrt(3 log 3)(sqrt(3 log 3) + sqrt(3 log 3 - 2)), the threshold of
/// the k = 2 term-monotonicity criterion 6(q-1)/q^2 <= 1/log 3.
double q_zero();

/// Reproduces the certification numerics: R_4 <= 0.92952, the q0 bridge
/// increment <= 0.02613 and R_4 + 0.02613 < 1.
VerificationReport bridge_check();

/// 4 - q_root where R_q = 1 on the 2 < q <= 4 branch, by bisection.
double epsilon_zero(double tol = 1e-4);

/// Samples positive x = y*y with y supported in the ball of the given
/// radius and checks ||P_t x||_q <= ||x||_2 (1 + 1e-10). For t below
/// log sqrt(q-1) violations are reported, never asserted.
VerificationReport hyper_direct_check(int rank, int ball_radius, int q, double t,
                                      int trials, std::uint64_t seed);

/// max((q-2)/q log sqrt(2 C rho) + log sqrt(q-1), log rho).
double growth_time_bound(double q, const GrowthParams& g);

/// 2C e^-(2t - log rho), valid for t > log rho.
double growth_tail_estimate(double t, const GrowthParams& g);

/// Convexity of f(theta) = (1 + u - u^theta - u^(1-theta))/(theta(1-theta))
/// on a dyadic interior grid (grid size rounded up to 2^k - 1 so mirrored
/// points are exact doubles): symmetry residual, second differences, and
/// the quadrature of the f'' integral form.
VerificationReport slq_f_convexity(double u, int grid_size);

}  // namespace ncvx::hyper
