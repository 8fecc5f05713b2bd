#include "ncvx/rng.hpp"

#include <Eigen/QR>

#include <cmath>

namespace ncvx::rng {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::mt19937_64 engine_for(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t state = seed ^ (0xA0761D6478BD642FULL * (stream + 1));
    const std::uint64_t a = splitmix64(state);
    const std::uint64_t b = splitmix64(state);
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    return std::mt19937_64(seq);
}

Matrix ginibre(int n, std::mt19937_64& gen, double sigma) {
    std::normal_distribution<double> normal(0.0, sigma);
    Matrix g(n, n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            g(i, j) = Complex(normal(gen), normal(gen));
        }
    }
    return g;
}

Matrix gue(int n, std::mt19937_64& gen, double sigma) {
    Matrix g = ginibre(n, gen, sigma);
    return (g + g.adjoint()) / 2.0;
}

Matrix gue_invertible(int n, std::mt19937_64& gen, double floor, double sigma) {
    Matrix a = gue(n, gen, sigma);
    Eigen::SelfAdjointEigenSolver<Matrix> es(a);
    Eigen::VectorXd lam = es.eigenvalues();
    for (int i = 0; i < n; ++i) {
        const double sign = (lam(i) >= 0.0) ? 1.0 : -1.0;
        lam(i) = sign * std::max(std::abs(lam(i)), floor);
    }
    return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix random_psd(int n, std::mt19937_64& gen) {
    Matrix g = ginibre(n, gen);
    return g * g.adjoint() / static_cast<double>(n);
}

Matrix random_unitary(int n, std::mt19937_64& gen) {
    Matrix g = ginibre(n, gen);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i) {
        const Complex d = r(i, i);
        const double ad = std::abs(d);
        q.col(i) *= (ad > 0.0) ? d / ad : Complex(1.0, 0.0);
    }
    return q;
}

}  // namespace ncvx::rng
