#include "ncvx/condexp.hpp"

#include "ncvx/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace ncvx::condexp {

namespace {

void require_dim(const ExpectationSpec& e, const Matrix& x) {
    if (x.rows() != x.cols() || x.rows() != e.dim()) {
        throw std::invalid_argument("apply_expectation: dimension mismatch");
    }
}

}  // namespace

ExpectationSpec ExpectationSpec::diagonal(int dim) {
    if (dim <= 0) throw std::invalid_argument("ExpectationSpec::diagonal: dim must be positive");
    ExpectationSpec e;
    e.kind_ = ExpectationKind::Diagonal;
    e.dim_ = dim;
    return e;
}

ExpectationSpec ExpectationSpec::full_trace(int dim) {
    if (dim <= 0) throw std::invalid_argument("ExpectationSpec::full_trace: dim must be positive");
    ExpectationSpec e;
    e.kind_ = ExpectationKind::FullTrace;
    e.dim_ = dim;
    return e;
}

ExpectationSpec ExpectationSpec::partial_trace_right(int left_dim, int right_dim) {
    if (left_dim <= 0 || right_dim <= 0) {
        throw std::invalid_argument("partial_trace_right: factor dims must be positive");
    }
    ExpectationSpec e;
    e.kind_ = ExpectationKind::PartialTraceRight;
    e.dim_ = left_dim * right_dim;
    e.left_dim_ = left_dim;
    e.right_dim_ = right_dim;
    return e;
}

ExpectationSpec ExpectationSpec::pinching(std::vector<Matrix> projections, double tol) {
    if (projections.empty()) {
        throw std::invalid_argument("pinching: projection family must be nonempty");
    }
    const Eigen::Index n = projections.front().rows();
    Matrix sum = Matrix::Zero(n, n);
    for (const Matrix& p : projections) {
        if (p.rows() != n || p.cols() != n) {
            throw std::invalid_argument("pinching: projections must share one dimension");
        }
        if (!matalg::is_selfadjoint(p, tol)) {
            throw std::invalid_argument("pinching: projections must be self-adjoint");
        }
        if ((p * p - p).cwiseAbs().maxCoeff() > tol * std::max(1.0, p.cwiseAbs().maxCoeff())) {
            throw std::invalid_argument("pinching: projections must be idempotent");
        }
        sum += p;
    }
    if ((sum - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > tol * projections.size()) {
        throw std::invalid_argument("pinching: projections must sum to the identity");
    }
    for (std::size_t i = 0; i < projections.size(); ++i) {
        for (std::size_t j = i + 1; j < projections.size(); ++j) {
            if ((projections[i] * projections[j]).cwiseAbs().maxCoeff() > tol) {
                throw std::invalid_argument("pinching: projections must be mutually orthogonal");
            }
        }
    }
    ExpectationSpec e;
    e.kind_ = ExpectationKind::Pinching;
    e.dim_ = static_cast<int>(n);
    e.projections_ = std::move(projections);
    return e;
}

ExpectationSpec ExpectationSpec::identity(int dim) {
    std::vector<Matrix> proj{Matrix::Identity(dim, dim)};
    return pinching(std::move(proj));
}

ExpectationSpec ExpectationSpec::partition_pinching(int dim,
                                                    const std::vector<std::vector<int>>& blocks) {
    std::vector<bool> seen(dim, false);
    std::vector<Matrix> proj;
    proj.reserve(blocks.size());
    for (const auto& block : blocks) {
        Matrix p = Matrix::Zero(dim, dim);
        for (int idx : block) {
            if (idx < 0 || idx >= dim || seen[idx]) {
                throw std::invalid_argument("partition_pinching: blocks must partition 0..dim-1");
            }
            seen[idx] = true;
            p(idx, idx) = 1.0;
        }
        proj.push_back(std::move(p));
    }
    for (bool s : seen) {
        if (!s) throw std::invalid_argument("partition_pinching: blocks must cover every index");
    }
    return pinching(std::move(proj));
}

ExpectationSpec ExpectationSpec::walsh_coordinate(int n_bits, int bit) {
    if (n_bits <= 0 || bit < 0 || bit >= n_bits) {
        throw std::invalid_argument("walsh_coordinate: bit index out of range");
    }
    const int dim = 1 << n_bits;
    Matrix w = Matrix::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) w(i ^ (1 << bit), i) = 1.0;
    const Matrix id = Matrix::Identity(dim, dim);
    std::vector<Matrix> proj{(id + w) / 2.0, (id - w) / 2.0};
    return pinching(std::move(proj));
}

Matrix ExpectationSpec::apply(const Matrix& x) const {
    require_dim(*this, x);
    switch (kind_) {
        case ExpectationKind::Diagonal: {
            Matrix y = Matrix::Zero(dim_, dim_);
            y.diagonal() = x.diagonal();
            return y;
        }
        case ExpectationKind::FullTrace:
            return (x.trace() / static_cast<double>(dim_)) * Matrix::Identity(dim_, dim_);
        case ExpectationKind::PartialTraceRight: {
            // E(x) = (tr_R x / r) (x) I_r, by partial summation over the
            // right index (no projection enumeration).
            Matrix reduced = Matrix::Zero(left_dim_, left_dim_);
            for (int i = 0; i < left_dim_; ++i) {
                for (int j = 0; j < left_dim_; ++j) {
                    Complex acc = 0.0;
                    for (int k = 0; k < right_dim_; ++k) {
                        acc += x(i * right_dim_ + k, j * right_dim_ + k);
                    }
                    reduced(i, j) = acc / static_cast<double>(right_dim_);
                }
            }
            Matrix y = Matrix::Zero(dim_, dim_);
            for (int i = 0; i < left_dim_; ++i) {
                for (int j = 0; j < left_dim_; ++j) {
                    for (int k = 0; k < right_dim_; ++k) {
                        y(i * right_dim_ + k, j * right_dim_ + k) = reduced(i, j);
                    }
                }
            }
            return y;
        }
        case ExpectationKind::Pinching: {
            Matrix y = Matrix::Zero(dim_, dim_);
            for (const Matrix& p : projections_) y += p * x * p;
            return y;
        }
    }
    throw std::logic_error("apply_expectation: unknown kind");
}

bool ExpectationSpec::is_identity(double tol) const {
    if (kind_ != ExpectationKind::Pinching) return false;
    // A pinching is the identity map iff every projection is 0 or I; with
    // orthogonality that means a single projection equal to I.
    if (projections_.size() != 1) return false;
    return (projections_.front() - Matrix::Identity(dim_, dim_)).cwiseAbs().maxCoeff() <= tol;
}

Matrix apply_expectation(const ExpectationSpec& e, const Matrix& x) {
    return e.apply(x);
}

VerificationReport validate_filtration(const Filtration& f, int trials, std::uint64_t seed,
                                       double tol) {
    VerificationReport report;
    report.command = "validate_filtration";
    report.seed = seed;
    report.add_param("steps", static_cast<std::int64_t>(f.specs.size()));
    report.add_param("trials", static_cast<std::int64_t>(trials));
    if (f.specs.empty()) {
        report.status = Status::Error;
        return report;
    }
    const int dim = f.specs.front().dim();
    for (const ExpectationSpec& e : f.specs) {
        if (e.dim() != dim) {
            report.status = Status::Error;
            report.check("consistent_ambient_dimension", e.dim(), dim, false);
            return report;
        }
    }

    double worst_idem = 0.0, worst_trace = 0.0, worst_tower = 0.0;
    for (int t = 0; t < trials; ++t) {
        auto gen = rng::engine_for(seed, static_cast<std::uint64_t>(t));
        const Matrix x = rng::ginibre(dim, gen);
        const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
        std::vector<Matrix> ex;
        ex.reserve(f.specs.size());
        for (const ExpectationSpec& e : f.specs) ex.push_back(e.apply(x));
        for (std::size_t i = 0; i < f.specs.size(); ++i) {
            worst_idem = std::max(worst_idem,
                                  (f.specs[i].apply(ex[i]) - ex[i]).norm() / scale);
            worst_trace = std::max(worst_trace,
                                   std::abs(ex[i].trace() - x.trace()) / scale);
            for (std::size_t j = i + 1; j < f.specs.size(); ++j) {
                // Tower property: E_i E_j = E_j E_i = E_min(i,j).
                worst_tower = std::max(worst_tower,
                                       (f.specs[i].apply(ex[j]) - ex[i]).norm() / scale);
                worst_tower = std::max(worst_tower,
                                       (f.specs[j].apply(ex[i]) - ex[i]).norm() / scale);
            }
        }
    }
    report.check("idempotence_residual", worst_idem, tol, worst_idem <= tol);
    report.check("trace_preservation_residual", worst_trace, tol, worst_trace <= tol);
    report.check("tower_residual", worst_tower, tol, worst_tower <= tol);
    report.finalize();
    return report;
}

}  // namespace ncvx::condexp
