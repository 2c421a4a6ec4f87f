#pragma once

#include <mutex>
#include <map>
#include <utility>
#include <vector>

#include "prodtop/cell_complex.hpp"

namespace prodtop {

/// Cartesian product Z = X x Y of two abstract cell complexes. An (i,j)-cell
/// of Z is a pair (i-cell of X, j-cell of Y); cells of a grade are enumerated
/// row-major with the X index outer and the Y index inner. All signals and
/// operators on a grade use that flattening.
class ProductComplex {
public:
    ProductComplex(AbstractCellComplex x, AbstractCellComplex y);

    const AbstractCellComplex& factorX() const { return x_; }
    const AbstractCellComplex& factorY() const { return y_; }

    int dimension() const { return x_.dimension() + y_.dimension(); }
    Eigen::Index cellCount(int i, int j) const { return x_.count(i) * y_.count(j); }

    IndexSpace gradeSpace(int i, int j) const;

    /// Cell pairs of a grade, materialized lazily on first access.
    const std::vector<std::pair<std::string, std::string>>& cells(int i, int j) const;

    /// Boundary of grade (i,j): the X part d_X (x) id_Y into grade (i-1,j) and
    /// the Y part (-1)^i id_X (x) d_Y into grade (i,j-1). Out-of-range grades
    /// give empty operators.
    std::pair<SparseOperator, SparseOperator> boundary(int i, int j) const;

    /// Full boundary of dimension k as one block matrix, grades ordered by
    /// ascending i within each dimension. Used to verify d_Z o d_Z = 0 and
    /// Prop-1 style assemblies.
    SparseOperator fullBoundary(int k) const;

    /// alpha_x * (Delta_X^i (x) I) + alpha_y * (I (x) Delta_Y^j).
    /// With unit weights this is the restriction of the product Hodge
    /// Laplacian to grade (i,j). Negative weights are rejected.
    SparseOperator hodgeLaplacian(int i, int j, double alpha_x = 1.0, double alpha_y = 1.0) const;

    /// Grades (i,j) with i+j = k and nonzero cell count, ascending i.
    std::vector<std::pair<int, int>> grades(int k) const;

    /// Offset of grade (i,j)'s block inside the dimension-k concatenation.
    Eigen::Index gradeOffset(int i, int j) const;
    Eigen::Index dimensionSize(int k) const;

private:
    AbstractCellComplex x_;
    AbstractCellComplex y_;

    mutable std::mutex cache_mutex_;
    mutable std::map<std::pair<int, int>, std::vector<std::pair<std::string, std::string>>> cell_cache_;
};

/// View a flat bigraded signal as an N_i(X) x N_j(Y) matrix (X outer, Y
/// inner) and back. Left-multiplying the matrix view by an operator on X is
/// the Kronecker action (A (x) I) on the flat vector; right-multiplying by
/// B^T is (I (x) B).
Eigen::MatrixXd unflattenSignal(const Eigen::VectorXd& flat, Eigen::Index nx, Eigen::Index ny);
Eigen::VectorXd flattenSignal(const Eigen::MatrixXd& grid);

}  // namespace prodtop
