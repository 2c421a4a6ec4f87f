#pragma once

#include <map>
#include <string>
#include <vector>

#include "prodtop/sparse_operator.hpp"

namespace prodtop {

/// Oriented simplicial complex. Simplices are stored as strictly ascending
/// vertex tuples; the ascending order is the reference orientation. Within a
/// dimension, simplices are kept in lexicographic order, which fixes the
/// row/column order of every boundary matrix.
class SimplicialComplex {
public:
    using Simplex = std::vector<int>;

    SimplicialComplex() = default;

    /// Downward closure of the given top-level simplices.
    /// Throws if a tuple repeats a vertex.
    static SimplicialComplex fromTopSimplices(const std::vector<Simplex>& top_simplices);

    /// Path graph P_n: vertices 1..n, edges (t, t+1). The temporal complex.
    static SimplicialComplex pathGraph(int n);

    int dimension() const { return static_cast<int>(simplices_by_dim_.size()) - 1; }

    /// N_k; zero for dimensions the complex does not reach.
    Eigen::Index count(int k) const;

    const std::vector<Simplex>& simplices(int k) const;

    /// Position of a simplex in the canonical ordering of its dimension,
    /// or -1 if absent.
    Eigen::Index indexOf(const Simplex& s) const;

    /// Signed incidence matrix B_k from k-simplices to (k-1)-simplices.
    /// Column for (v_0,...,v_k) has entry (-1)^m in the row of the face
    /// omitting v_m. k = 0 yields the empty operator (B_0 = 0 convention);
    /// empty dimensions yield zero-column/zero-row matrices.
    SparseOperator boundary(int k) const;

    const std::string& id() const { return id_; }

    IndexSpace space(int k) const {
        return IndexSpace{id_, "dim" + std::to_string(k), count(k)};
    }

private:
    std::string id_ = "sc";
    std::vector<std::vector<Simplex>> simplices_by_dim_;
    std::vector<std::map<Simplex, Eigen::Index>> index_by_dim_;

    void rebuildIndex();
};

}  // namespace prodtop
