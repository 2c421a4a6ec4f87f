#pragma once

#include <Eigen/Dense>
#include <vector>

#include "prodtop/cell_complex.hpp"
#include "prodtop/product_complex.hpp"
#include "prodtop/simplicial_complex.hpp"

namespace prodtop {

/// L_k = B_k^T B_k + B_{k+1} B_{k+1}^T.
SparseOperator hodgeLaplacian(const SimplicialComplex& x, int k);
SparseOperator hodgeLaplacian(const AbstractCellComplex& x, int k);

/// Orthonormal bases of the three orthogonal pieces of R^{N_k}:
/// gradient = Im(B_k^T), curl = Im(B_{k+1}), harmonic = ker(L_k).
struct HodgeDecomposition {
    int grade = 0;
    Eigen::MatrixXd basis_gradient;
    Eigen::MatrixXd basis_curl;
    Eigen::MatrixXd basis_harmonic;
    double tolerance = 1e-10;

    Eigen::Index totalDim() const {
        return basis_gradient.rows();
    }
    /// Component of s in each subspace; the three sum back to s.
    Eigen::VectorXd projectGradient(const Eigen::VectorXd& s) const;
    Eigen::VectorXd projectCurl(const Eigen::VectorXd& s) const;
    Eigen::VectorXd projectHarmonic(const Eigen::VectorXd& s) const;
};

HodgeDecomposition hodgeDecompose(const SimplicialComplex& x, int k, double tol = 1e-10);
HodgeDecomposition hodgeDecompose(const AbstractCellComplex& x, int k, double tol = 1e-10);

struct EigenMode {
    double eigenvalue;
    Eigen::VectorXd vector;
};

/// Ascending extremal eigenpairs of a symmetric operator. Dense
/// decomposition below dimension 512, Lanczos with full reorthogonalization
/// above. Throws if the operator is not symmetric.
std::vector<EigenMode> eigenmodes(const SparseOperator& L, int count);

struct ProductEigenMode {
    double lambda_x;
    double lambda_y;
    Eigen::VectorXd vector;  // flattened u (x) v
};

/// Eigenmodes of the grade-(i,j) product Laplacian built as outer products
/// of factor eigenmodes; eigenvalue lambda_x + lambda_y, ascending by sum.
std::vector<ProductEigenMode> productEigenmodes(const ProductComplex& z, int i, int j, int count);

}  // namespace prodtop
