#include "prodtop/cell_complex.hpp"

#include <sstream>
#include <stdexcept>

#include "prodtop/simplicial_complex.hpp"

namespace prodtop {

AbstractCellComplex AbstractCellComplex::fromCells(std::vector<std::vector<Cell>> cells_by_dim,
                                                   std::string id) {
    // trim trailing empty dimensions
    while (!cells_by_dim.empty() && cells_by_dim.back().empty()) cells_by_dim.pop_back();

    AbstractCellComplex cc;
    cc.id_ = std::move(id);
    cc.cells_by_dim_ = std::move(cells_by_dim);
    cc.index_by_dim_.assign(cc.cells_by_dim_.size(), {});
    for (std::size_t k = 0; k < cc.cells_by_dim_.size(); ++k) {
        for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(cc.cells_by_dim_[k].size()); ++i) {
            const auto& cell = cc.cells_by_dim_[k][i];
            if (!cc.index_by_dim_[k].emplace(cell.id, i).second)
                throw std::invalid_argument("duplicate cell id '" + cell.id + "' in dimension " +
                                            std::to_string(k));
        }
    }
    // boundary references must exist one dimension lower
    for (std::size_t k = 0; k < cc.cells_by_dim_.size(); ++k) {
        for (const auto& cell : cc.cells_by_dim_[k]) {
            if (k == 0 && !cell.boundary.empty())
                throw std::invalid_argument("0-cell '" + cell.id + "' has boundary entries");
            for (const auto& be : cell.boundary) {
                if (k == 0 || cc.index_by_dim_[k - 1].count(be.face_id) == 0)
                    throw std::invalid_argument("cell '" + cell.id + "' references missing face '" +
                                                be.face_id + "'");
            }
        }
    }
    // d o d = 0
    for (int k = 1; k < cc.dimension(); ++k) {
        SparseOperator comp = cc.boundary(k) * cc.boundary(k + 1);
        if (comp.maxAbs() != 0.0)
            throw std::invalid_argument("boundary of boundary is nonzero at dimension " +
                                        std::to_string(k + 1));
    }
    return cc;
}

Eigen::Index AbstractCellComplex::count(int k) const {
    if (k < 0 || k > dimension()) return 0;
    return static_cast<Eigen::Index>(cells_by_dim_[k].size());
}

const std::vector<AbstractCellComplex::Cell>& AbstractCellComplex::cells(int k) const {
    static const std::vector<Cell> kEmpty;
    if (k < 0 || k > dimension()) return kEmpty;
    return cells_by_dim_[k];
}

Eigen::Index AbstractCellComplex::indexOf(int k, const std::string& cell_id) const {
    if (k < 0 || k > dimension()) return -1;
    auto it = index_by_dim_[k].find(cell_id);
    return it == index_by_dim_[k].end() ? -1 : it->second;
}

SparseOperator AbstractCellComplex::boundary(int k) const {
    if (k == 0) return SparseOperator::zero(IndexSpace{id_, "dim-1", 0}, space(0));
    if (k < 0) throw std::invalid_argument("boundary: negative dimension");

    const IndexSpace rows = space(k - 1);
    const IndexSpace cols = space(k);
    std::vector<Eigen::Triplet<double>> trips;
    if (k <= dimension()) {
        const auto& cells = cells_by_dim_[k];
        for (Eigen::Index c = 0; c < static_cast<Eigen::Index>(cells.size()); ++c)
            for (const auto& be : cells[c].boundary)
                trips.emplace_back(index_by_dim_[k - 1].at(be.face_id), c,
                                   static_cast<double>(be.coefficient));
    }
    Eigen::SparseMatrix<double> mat(rows.size, cols.size);
    mat.setFromTriplets(trips.begin(), trips.end());
    return SparseOperator(rows, cols, std::move(mat));
}

AbstractCellComplex scToCc(const SimplicialComplex& sc, std::string id) {
    auto cellId = [](const SimplicialComplex::Simplex& s) {
        std::ostringstream os;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (i) os << '-';
            os << s[i];
        }
        return os.str();
    };

    std::vector<std::vector<AbstractCellComplex::Cell>> cells(
        static_cast<std::size_t>(std::max(sc.dimension() + 1, 0)));
    for (int k = 0; k <= sc.dimension(); ++k) {
        for (const auto& s : sc.simplices(k)) {
            AbstractCellComplex::Cell cell;
            cell.id = cellId(s);
            if (k > 0) {
                for (int m = 0; m <= k; ++m) {
                    SimplicialComplex::Simplex face;
                    for (int p = 0; p <= k; ++p)
                        if (p != m) face.push_back(s[p]);
                    cell.boundary.push_back({cellId(face), (m % 2 == 0) ? 1 : -1});
                }
            }
            cells[k].push_back(std::move(cell));
        }
    }
    return AbstractCellComplex::fromCells(std::move(cells), std::move(id));
}

}  // namespace prodtop
