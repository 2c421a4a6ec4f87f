#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "prodtop/sparse_operator.hpp"

namespace prodtop {

class SimplicialComplex;

/// Abstract cell complex: cells carry an opaque id, a dimension, and a signed
/// boundary relation. No geometric attaching maps. Construction validates
/// that every boundary reference exists one dimension lower and that the
/// induced boundary matrices compose to zero.
class AbstractCellComplex {
public:
    struct BoundaryEntry {
        std::string face_id;
        int coefficient;  // usually +1 / -1
    };
    struct Cell {
        std::string id;
        std::vector<BoundaryEntry> boundary;
    };

    AbstractCellComplex() = default;

    /// cells_by_dim[k] lists the k-cells in their canonical order.
    /// Throws on duplicate ids, dangling boundary references, or if the
    /// boundary of a boundary fails to vanish.
    static AbstractCellComplex fromCells(std::vector<std::vector<Cell>> cells_by_dim,
                                         std::string id = "cc");

    int dimension() const { return static_cast<int>(cells_by_dim_.size()) - 1; }
    Eigen::Index count(int k) const;
    const std::vector<Cell>& cells(int k) const;
    Eigen::Index indexOf(int k, const std::string& cell_id) const;

    /// B_k assembled from the stored boundary entries. Same empty-dimension
    /// conventions as SimplicialComplex::boundary.
    SparseOperator boundary(int k) const;

    const std::string& id() const { return id_; }

    IndexSpace space(int k) const {
        return IndexSpace{id_, "dim" + std::to_string(k), count(k)};
    }

private:
    std::string id_ = "cc";
    std::vector<std::vector<Cell>> cells_by_dim_;
    std::vector<std::unordered_map<std::string, Eigen::Index>> index_by_dim_;
};

/// Every simplicial complex is a cell complex; cell ids keep the simplex
/// identity ("1-2-3") and the boundary entries reproduce the simplicial
/// boundary matrices entry for entry.
AbstractCellComplex scToCc(const SimplicialComplex& sc, std::string id = "cc");

}  // namespace prodtop
