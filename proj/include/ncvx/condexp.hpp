// condexp.hpp — trace-preserving conditional expectations onto von Neumann
// subalgebras of M_n, and filtrations thereof.

#pragma once

#include "ncvx/matalg.hpp"
#include "ncvx/report.hpp"

#include <cstdint>
#include <vector>

namespace ncvx::condexp {

using matalg::Complex;
using matalg::Matrix;

enum class ExpectationKind { Pinching, Diagonal, PartialTraceRight, FullTrace };

/// A trace-preserving conditional expectation on M_n. Pinching is the
/// canonical representation; Diagonal, FullTrace and PartialTraceRight are
/// conveniences with direct formulas. Invalid projection families are
/// rejected at construction, never repaired.
class ExpectationSpec {
public:
    static ExpectationSpec diagonal(int dim);
    static ExpectationSpec full_trace(int dim);
    static ExpectationSpec partial_trace_right(int left_dim, int right_dim);
    static ExpectationSpec pinching(std::vector<Matrix> projections,
                                    double tol = matalg::kDefaultTol);
    /// Pinching by the single projection I (the identity expectation).
    static ExpectationSpec identity(int dim);
    /// Pinching by the coordinate partition `blocks` (each block a set of
    /// basis indices); the range is the corresponding block-diagonal algebra.
    static ExpectationSpec partition_pinching(int dim, const std::vector<std::vector<int>>& blocks);
    /// The Walsh-coordinate expectation on M_(2^n_bits): averaging over the
    /// sign flip of coordinate `bit`, realized as the pinching by
    /// (I +- W)/2 with W the flip permutation. On diagonal matrices this is
    /// the conditional expectation onto functions independent of that
    /// coordinate.
    static ExpectationSpec walsh_coordinate(int n_bits, int bit);

    ExpectationKind kind() const { return kind_; }
    int dim() const { return dim_; }
    int left_dim() const { return left_dim_; }
    int right_dim() const { return right_dim_; }
    const std::vector<Matrix>& projections() const { return projections_; }

    Matrix apply(const Matrix& x) const;

    /// True when this expectation fixes every matrix (range = M_n).
    bool is_identity(double tol = matalg::kDefaultTol) const;

private:
    ExpectationSpec() = default;
    ExpectationKind kind_ = ExpectationKind::FullTrace;
    int dim_ = 0;
    int left_dim_ = 0, right_dim_ = 0;   // PartialTraceRight only
    std::vector<Matrix> projections_;    // Pinching only
};

Matrix apply_expectation(const ExpectationSpec& e, const Matrix& x);

/// An increasing sequence of subalgebras, coarsest (smallest algebra) first.
struct Filtration {
    std::vector<ExpectationSpec> specs;
};

/// Tower-property and single-expectation residuals on random inputs.
/// Failures are report entries, not exceptions.
VerificationReport validate_filtration(const Filtration& f, int trials, std::uint64_t seed,
                                       double tol = matalg::kDefaultTol);

}  // namespace ncvx::condexp
