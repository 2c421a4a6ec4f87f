#pragma once

#include <Eigen/Sparse>
#include <stdexcept>
#include <string>
#include <utility>

namespace prodtop {

/// Identifies the vector space a matrix axis is indexed by: which complex,
/// which dimension (or grade), and how many cells. Composing operators with
/// mismatched index spaces is a logic error, not a numerical one.
struct IndexSpace {
    std::string complex_id;
    std::string label;  // e.g. "dim1" or "grade(1,0)"
    Eigen::Index size = 0;

    bool operator==(const IndexSpace& o) const {
        return complex_id == o.complex_id && label == o.label && size == o.size;
    }
    bool operator!=(const IndexSpace& o) const { return !(*this == o); }

    std::string describe() const {
        return complex_id + ":" + label + "[" + std::to_string(size) + "]";
    }
};

/// Sparse real matrix tagged with explicit row/column index spaces.
/// Entries are stored as doubles; boundary assembly only ever inserts small
/// integers, so products of boundary operators stay exact.
class SparseOperator {
public:
    using Matrix = Eigen::SparseMatrix<double>;

    SparseOperator() = default;
    SparseOperator(IndexSpace rows, IndexSpace cols, Matrix mat)
        : rows_(std::move(rows)), cols_(std::move(cols)), mat_(std::move(mat)) {
        if (mat_.rows() != rows_.size || mat_.cols() != cols_.size)
            throw std::invalid_argument("SparseOperator: matrix shape disagrees with index spaces");
    }

    static SparseOperator zero(IndexSpace rows, IndexSpace cols) {
        Matrix m(rows.size, cols.size);
        return SparseOperator(std::move(rows), std::move(cols), std::move(m));
    }

    static SparseOperator identity(const IndexSpace& space) {
        Matrix m(space.size, space.size);
        m.setIdentity();
        return SparseOperator(space, space, std::move(m));
    }

    const IndexSpace& rowSpace() const { return rows_; }
    const IndexSpace& colSpace() const { return cols_; }
    const Matrix& matrix() const { return mat_; }
    Eigen::Index rows() const { return mat_.rows(); }
    Eigen::Index cols() const { return mat_.cols(); }
    Eigen::Index nonZeros() const { return mat_.nonZeros(); }

    SparseOperator transpose() const {
        return SparseOperator(cols_, rows_, Matrix(mat_.transpose()));
    }

    /// Composition; throws if the inner index spaces disagree.
    SparseOperator operator*(const SparseOperator& rhs) const {
        if (cols_ != rhs.rows_)
            throw std::invalid_argument("SparseOperator: index-space mismatch in composition: " +
                                        cols_.describe() + " vs " + rhs.rows_.describe());
        Matrix prod = mat_ * rhs.mat_;
        prod.prune(0.0);
        return SparseOperator(rows_, rhs.cols_, std::move(prod));
    }

    SparseOperator operator+(const SparseOperator& rhs) const {
        if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
            throw std::invalid_argument("SparseOperator: index-space mismatch in sum");
        return SparseOperator(rows_, cols_, Matrix(mat_ + rhs.mat_));
    }

    SparseOperator scaled(double c) const {
        return SparseOperator(rows_, cols_, Matrix(c * mat_));
    }

    Eigen::VectorXd apply(const Eigen::VectorXd& v) const {
        if (v.size() != mat_.cols())
            throw std::invalid_argument("SparseOperator: vector length mismatch");
        return mat_ * v;
    }

    double maxAbs() const {
        double m = 0.0;
        for (int k = 0; k < mat_.outerSize(); ++k)
            for (Matrix::InnerIterator it(mat_, k); it; ++it)
                m = std::max(m, std::abs(it.value()));
        return m;
    }

private:
    IndexSpace rows_;
    IndexSpace cols_;
    Matrix mat_;
};

}  // namespace prodtop
