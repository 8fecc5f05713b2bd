#include "ncvx/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <vector>

namespace ncvx::quadrature {

namespace {

GaussLegendre compute_gauss_legendre(int order) {
    GaussLegendre gl;
    gl.nodes.resize(order);
    gl.weights.resize(order);
    const int half = (order + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            // Legendre recurrence for P_n(x) and P'_n(x).
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        gl.nodes[i] = -x;
        gl.weights[i] = w;
        gl.nodes[order - 1 - i] = x;
        gl.weights[order - 1 - i] = w;
    }
    return gl;
}

}  // namespace

const GaussLegendre& gauss_legendre(int order) {
    static std::mutex mu;
    static std::map<int, GaussLegendre> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(order);
    if (it == cache.end()) {
        it = cache.emplace(order, compute_gauss_legendre(order)).first;
    }
    return it->second;
}

double integrate_unit_graded(const std::function<double(double)>& f,
                             double head_exponent, double reltol) {
    if (!(head_exponent > -1.0)) {
        throw std::invalid_argument("integrate_unit_graded: head exponent must exceed -1");
    }
    // Depth so that the unresolved head mass ~ 10^(-depth*(1+e)) / (1+e)
    // is below ~1e-14 of the total; capped to stay in normal double range.
    const double mass_rate = 1.0 + head_exponent;
    int depth = static_cast<int>(std::ceil(14.0 / mass_rate)) + 2;
    depth = std::min(depth, 300);

    std::vector<double> breaks;
    breaks.reserve(depth + 2);
    breaks.push_back(0.0);
    for (int j = depth; j >= 0; --j) breaks.push_back(std::pow(10.0, -j));

    double prev = 0.0;
    bool have_prev = false;
    double total = 0.0;
    for (int order : {16, 32, 64, 128}) {
        const GaussLegendre& gl = gauss_legendre(order);
        total = 0.0;
        for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
            const double a = breaks[k], b = breaks[k + 1];
            if (b <= a) continue;
            const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
            double panel = 0.0;
            for (int i = 0; i < order; ++i) {
                panel += gl.weights[i] * f(mid + half * gl.nodes[i]);
            }
            total += half * panel;
        }
        if (have_prev && std::abs(total - prev) <= reltol * std::abs(total)) {
            return total;
        }
        prev = total;
        have_prev = true;
    }
    return total;
}

double integrate_zero_inf(const std::function<double(double)>& f,
                          double head_exponent, double decay_exponent,
                          double reltol) {
    if (!(decay_exponent > 1.0)) {
        throw std::invalid_argument("integrate_zero_inf: decay exponent must exceed 1");
    }
    if (std::min(1.0 + head_exponent, decay_exponent - 1.0) < 0.1) {
        throw std::invalid_argument(
            "integrate_zero_inf: exponents need panels too deep for the literal fold; "
            "use integrate_zero_inf_split");
    }
    // After the fold the integrand on (0,1] has heads t^head_exponent
    // (from 0) and t^(decay_exponent-2) (from infinity).
    const double folded_head = std::min(head_exponent, decay_exponent - 2.0);
    auto folded = [&f](double t) { return f(t) + f(1.0 / t) / (t * t); };
    return integrate_unit_graded(folded, folded_head, reltol);
}

double integrate_zero_inf_split(const std::function<double(double)>& head,
                                const std::function<double(double)>& folded_tail,
                                double head_exponent, double decay_exponent,
                                double reltol) {
    if (!(decay_exponent > 1.0)) {
        throw std::invalid_argument("integrate_zero_inf_split: decay exponent must exceed 1");
    }
    const double folded_head = std::min(head_exponent, decay_exponent - 2.0);
    auto folded = [&](double t) { return head(t) + folded_tail(t); };
    return integrate_unit_graded(folded, folded_head, reltol);
}

double beta_kernel_integral(double alpha, double reltol) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("beta_kernel_integral: require 0 < alpha < 1");
    }
    // s^(alpha-1)/(1+s) = s^(alpha-1) - s^alpha/(1+s) on (0,1], and the
    // s -> 1/s fold of the tail gives t^(-alpha)/(1+t); subtracting both
    // pure powers leaves a bounded integrand:
    //   B(alpha) = 1/alpha + 1/(1-alpha) - int_0^1 (t^alpha + t^(1-alpha))/(1+t) dt.
    auto rem = [alpha](double t) {
        return (std::pow(t, alpha) + std::pow(t, 1.0 - alpha)) / (1.0 + t);
    };
    const double head = std::min(alpha, 1.0 - alpha);
    const double r = integrate_unit_graded(rem, head, reltol);
    return 1.0 / alpha + 1.0 / (1.0 - alpha) - r;
}

}  // namespace ncvx::quadrature
