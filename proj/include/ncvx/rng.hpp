// rng.hpp — seeded random ensembles for the Monte-Carlo verifiers.
// Per-trial engines are derived from (seed, stream) so that trial i is
// reproducible regardless of evaluation order.

#pragma once

#include "ncvx/matalg.hpp"

#include <cstdint>
#include <random>

namespace ncvx::rng {

using matalg::Complex;
using matalg::Matrix;

/// splitmix64 step; used to decorrelate derived seeds.
std::uint64_t splitmix64(std::uint64_t& state);

/// Engine for trial `stream` of a run with master seed `seed`.
std::mt19937_64 engine_for(std::uint64_t seed, std::uint64_t stream);

/// Independent standard complex Gaussian entries (Ginibre ensemble).
Matrix ginibre(int n, std::mt19937_64& gen, double sigma = 1.0);

/// GUE-style hermitian: (G + G*)/2 with G Ginibre, entry magnitudes O(1).
Matrix gue(int n, std::mt19937_64& gen, double sigma = 1.0);

/// Hermitian with all |eigenvalues| >= floor (spectrum pushed away from 0),
/// for oracles requiring invertible self-adjoint inputs.
Matrix gue_invertible(int n, std::mt19937_64& gen, double floor, double sigma = 1.0);

/// Positive semidefinite g g* / n with g Ginibre.
Matrix random_psd(int n, std::mt19937_64& gen);

/// Haar-ish unitary via QR of a Ginibre matrix with phase correction.
Matrix random_unitary(int n, std::mt19937_64& gen);

}  // namespace ncvx::rng
