#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <random>
#include <vector>

#include "prodtop/simplicial_complex.hpp"

namespace prodtop::testutil {

/// Random closed simplicial complex: a handful of random top simplices of
/// dimension <= max_dim over at most n_vertices vertices.
inline SimplicialComplex randomComplex(std::mt19937& rng, int n_vertices = 8, int max_dim = 2,
                                       int n_top = 6) {
    std::uniform_int_distribution<int> vert(1, n_vertices);
    std::uniform_int_distribution<int> dim(0, max_dim);
    std::vector<SimplicialComplex::Simplex> top;
    for (int i = 0; i < n_top; ++i) {
        const int k = dim(rng);
        std::vector<int> pool(n_vertices);
        for (int v = 0; v < n_vertices; ++v) pool[v] = v + 1;
        std::shuffle(pool.begin(), pool.end(), rng);
        SimplicialComplex::Simplex s(pool.begin(), pool.begin() + k + 1);
        std::sort(s.begin(), s.end());
        top.push_back(std::move(s));
    }
    return SimplicialComplex::fromTopSimplices(top);
}

/// Independent spectrum oracle: dense self-adjoint eigenvalues, ascending.
inline Eigen::VectorXd denseSpectrum(const Eigen::SparseMatrix<double>& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es{Eigen::MatrixXd(m)};
    return es.eigenvalues();
}

/// Kronecker-sum oracle: sorted multiset of pairwise sums.
inline Eigen::VectorXd kroneckerSumSpectrum(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    Eigen::VectorXd out(a.size() * b.size());
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < a.size(); ++i)
        for (Eigen::Index j = 0; j < b.size(); ++j) out(k++) = a(i) + b(j);
    std::sort(out.data(), out.data() + out.size());
    return out;
}

}  // namespace prodtop::testutil
