#include "prodtop/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <random>
#include <stdexcept>

namespace prodtop {

namespace {

SparseOperator laplacianFromBoundaries(const SparseOperator& bk, const SparseOperator& bk1,
                                       const IndexSpace& space) {
    Eigen::SparseMatrix<double> mat(space.size, space.size);
    if (bk.rows() > 0) mat += Eigen::SparseMatrix<double>(bk.matrix().transpose() * bk.matrix());
    if (bk1.cols() > 0) mat += Eigen::SparseMatrix<double>(bk1.matrix() * bk1.matrix().transpose());
    return SparseOperator(space, space, std::move(mat));
}

/// Orthonormal basis of the column space, rank decided by sigma > tol * sigma_max.
Eigen::MatrixXd columnSpaceBasis(const Eigen::MatrixXd& m, double tol) {
    if (m.cols() == 0 || m.rows() == 0) return Eigen::MatrixXd(m.rows(), 0);
    Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
    const auto& sigma = svd.singularValues();
    if (sigma.size() == 0 || sigma(0) == 0.0) return Eigen::MatrixXd(m.rows(), 0);
    Eigen::Index rank = 0;
    while (rank < sigma.size() && sigma(rank) > tol * sigma(0)) ++rank;
    return svd.matrixU().leftCols(rank);
}

std::vector<EigenMode> denseEigenmodes(const Eigen::MatrixXd& dense, int count) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
    std::vector<EigenMode> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i)
        out.push_back({es.eigenvalues()(i), es.eigenvectors().col(i)});
    return out;
}

// Lanczos with full reorthogonalization, expanding the Krylov basis until
// the requested low Ritz pairs converge (or the basis spans the space).
std::vector<EigenMode> lanczosEigenmodes(const Eigen::SparseMatrix<double>& a, int count) {
    const Eigen::Index n = a.rows();
    const double scale = a.nonZeros() > 0 ? a.coeffs().abs().maxCoeff() : 1.0;
    const double residual_target = 1e-9 * std::max(1.0, scale);

    std::mt19937 rng(12345);
    std::normal_distribution<double> gauss;
    Eigen::VectorXd v = Eigen::VectorXd::NullaryExpr(n, [&](Eigen::Index) { return gauss(rng); });
    v.normalize();

    Eigen::MatrixXd basis(n, std::min<Eigen::Index>(n, 64));
    std::vector<double> alpha, beta;
    int steps = 0;
    bool exhausted = false;

    auto extract = [&](std::vector<EigenMode>& out) {
        Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(steps, steps);
        for (int k = 0; k < steps; ++k) {
            tri(k, k) = alpha[k];
            if (k + 1 < steps) tri(k, k + 1) = tri(k + 1, k) = beta[k];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
        out.clear();
        for (int i = 0; i < count && i < steps; ++i) {
            Eigen::VectorXd vec = basis.leftCols(steps) * es.eigenvectors().col(i);
            vec.normalize();
            out.push_back({es.eigenvalues()(i), std::move(vec)});
        }
    };

    std::vector<EigenMode> modes;
    while (true) {
        const int chunk = std::min<Eigen::Index>(64, n - steps);
        for (int c = 0; c < chunk; ++c) {
            if (basis.cols() <= steps) basis.conservativeResize(Eigen::NoChange, 2 * basis.cols());
            basis.col(steps) = v;
            Eigen::VectorXd w = a * v;
            alpha.push_back(v.dot(w));
            w -= alpha.back() * v;
            if (steps > 0) w -= beta.back() * basis.col(steps - 1);
            w -= basis.leftCols(steps + 1) * (basis.leftCols(steps + 1).transpose() * w);
            const double b = w.norm();
            ++steps;
            if (b < 1e-14 || steps == n) {
                beta.push_back(0.0);
                exhausted = true;
                break;
            }
            beta.push_back(b);
            v = w / b;
        }
        extract(modes);
        bool converged = static_cast<int>(modes.size()) >= std::min<Eigen::Index>(count, steps);
        for (const auto& m : modes)
            converged = converged && (a * m.vector - m.eigenvalue * m.vector).norm() <= residual_target;
        if (converged || exhausted || steps >= n) break;
    }
    return modes;
}

}  // namespace

SparseOperator hodgeLaplacian(const SimplicialComplex& x, int k) {
    return laplacianFromBoundaries(x.boundary(k), x.boundary(k + 1), x.space(k));
}

SparseOperator hodgeLaplacian(const AbstractCellComplex& x, int k) {
    return laplacianFromBoundaries(x.boundary(k), x.boundary(k + 1), x.space(k));
}

Eigen::VectorXd HodgeDecomposition::projectGradient(const Eigen::VectorXd& s) const {
    return basis_gradient * (basis_gradient.transpose() * s);
}
Eigen::VectorXd HodgeDecomposition::projectCurl(const Eigen::VectorXd& s) const {
    return basis_curl * (basis_curl.transpose() * s);
}
Eigen::VectorXd HodgeDecomposition::projectHarmonic(const Eigen::VectorXd& s) const {
    return basis_harmonic * (basis_harmonic.transpose() * s);
}

namespace {

HodgeDecomposition decomposeFromBoundaries(const SparseOperator& bk, const SparseOperator& bk1,
                                           const SparseOperator& lk, int k, double tol) {
    if (tol <= 0.0) throw std::invalid_argument("hodge decomposition tolerance must be positive");
    HodgeDecomposition dec;
    dec.grade = k;
    dec.tolerance = tol;
    dec.basis_gradient = columnSpaceBasis(Eigen::MatrixXd(bk.matrix().transpose()), tol);
    dec.basis_curl = columnSpaceBasis(Eigen::MatrixXd(bk1.matrix()), tol);

    // harmonic = kernel of L_k: eigenvectors with eigenvalue below tol * max
    Eigen::MatrixXd dense(lk.matrix());
    if (dense.rows() == 0) {
        dec.basis_harmonic = Eigen::MatrixXd(0, 0);
        if (dec.basis_gradient.size() == 0) dec.basis_gradient = Eigen::MatrixXd(0, 0);
        if (dec.basis_curl.size() == 0) dec.basis_curl = Eigen::MatrixXd(0, 0);
        return dec;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
    const double cutoff = std::max(es.eigenvalues().cwiseAbs().maxCoeff(), 1.0) * tol;
    Eigen::Index kernel_dim = 0;
    while (kernel_dim < es.eigenvalues().size() && es.eigenvalues()(kernel_dim) < cutoff)
        ++kernel_dim;
    dec.basis_harmonic = es.eigenvectors().leftCols(kernel_dim);
    return dec;
}

}  // namespace

HodgeDecomposition hodgeDecompose(const SimplicialComplex& x, int k, double tol) {
    return decomposeFromBoundaries(x.boundary(k), x.boundary(k + 1), hodgeLaplacian(x, k), k, tol);
}

HodgeDecomposition hodgeDecompose(const AbstractCellComplex& x, int k, double tol) {
    return decomposeFromBoundaries(x.boundary(k), x.boundary(k + 1), hodgeLaplacian(x, k), k, tol);
}

std::vector<EigenMode> eigenmodes(const SparseOperator& L, int count) {
    if (L.rows() != L.cols()) throw std::invalid_argument("eigenmodes: operator not square");
    Eigen::SparseMatrix<double> diff = L.matrix() - Eigen::SparseMatrix<double>(L.matrix().transpose());
    const double scale = std::max(L.maxAbs(), 1.0);
    if (SparseOperator(L.rowSpace(), L.colSpace(), std::move(diff)).maxAbs() > 1e-12 * scale)
        throw std::invalid_argument("eigenmodes: operator not symmetric");
    if (count < 0 || count > L.rows())
        throw std::invalid_argument("eigenmodes: count out of range");
    if (count == 0) return {};

    if (L.rows() < 512) return denseEigenmodes(Eigen::MatrixXd(L.matrix()), count);
    return lanczosEigenmodes(L.matrix(), count);
}

std::vector<ProductEigenMode> productEigenmodes(const ProductComplex& z, int i, int j, int count) {
    const Eigen::Index dim = z.cellCount(i, j);
    if (count < 0 || count > dim) throw std::invalid_argument("productEigenmodes: count out of range");

    auto mx = eigenmodes(hodgeLaplacian(z.factorX(), i), static_cast<int>(z.factorX().count(i)));
    auto my = eigenmodes(hodgeLaplacian(z.factorY(), j), static_cast<int>(z.factorY().count(j)));

    std::vector<std::pair<double, std::pair<int, int>>> order;
    order.reserve(mx.size() * my.size());
    for (int a = 0; a < static_cast<int>(mx.size()); ++a)
        for (int b = 0; b < static_cast<int>(my.size()); ++b)
            order.push_back({mx[a].eigenvalue + my[b].eigenvalue, {a, b}});
    std::stable_sort(order.begin(), order.end(),
                     [](const auto& l, const auto& r) { return l.first < r.first; });

    std::vector<ProductEigenMode> out;
    out.reserve(count);
    for (int k = 0; k < count; ++k) {
        const auto [a, b] = order[k].second;
        Eigen::MatrixXd outer = mx[a].vector * my[b].vector.transpose();
        out.push_back({mx[a].eigenvalue, my[b].eigenvalue, flattenSignal(outer)});
    }
    return out;
}

}  // namespace prodtop
