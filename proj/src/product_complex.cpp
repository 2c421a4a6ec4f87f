#include "prodtop/product_complex.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <stdexcept>

#include "prodtop/spectral.hpp"

namespace prodtop {

ProductComplex::ProductComplex(AbstractCellComplex x, AbstractCellComplex y)
    : x_(std::move(x)), y_(std::move(y)) {}

IndexSpace ProductComplex::gradeSpace(int i, int j) const {
    return IndexSpace{x_.id() + "x" + y_.id(),
                      "grade(" + std::to_string(i) + "," + std::to_string(j) + ")",
                      cellCount(i, j)};
}

const std::vector<std::pair<std::string, std::string>>& ProductComplex::cells(int i, int j) const {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto key = std::make_pair(i, j);
    auto it = cell_cache_.find(key);
    if (it != cell_cache_.end()) return it->second;

    std::vector<std::pair<std::string, std::string>> pairs;
    pairs.reserve(static_cast<std::size_t>(cellCount(i, j)));
    for (const auto& cx : x_.cells(i))
        for (const auto& cy : y_.cells(j))
            pairs.emplace_back(cx.id, cy.id);
    return cell_cache_.emplace(key, std::move(pairs)).first->second;
}

std::pair<SparseOperator, SparseOperator> ProductComplex::boundary(int i, int j) const {
    if (i + j < 1) throw std::invalid_argument("product boundary needs i + j >= 1");

    const IndexSpace from = gradeSpace(i, j);

    SparseOperator::Matrix x_part;
    if (i >= 1) {
        Eigen::SparseMatrix<double> iy(y_.count(j), y_.count(j));
        iy.setIdentity();
        x_part = Eigen::kroneckerProduct(x_.boundary(i).matrix(), iy).eval();
    } else {
        x_part.resize(0, from.size);
    }
    IndexSpace x_rows = (i >= 1) ? gradeSpace(i - 1, j)
                                 : IndexSpace{from.complex_id, "grade(-1," + std::to_string(j) + ")", 0};

    SparseOperator::Matrix y_part;
    if (j >= 1) {
        Eigen::SparseMatrix<double> ix(x_.count(i), x_.count(i));
        ix.setIdentity();
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;
        y_part = (sign * Eigen::kroneckerProduct(ix, y_.boundary(j).matrix())).eval();
    } else {
        y_part.resize(0, from.size);
    }
    IndexSpace y_rows = (j >= 1) ? gradeSpace(i, j - 1)
                                 : IndexSpace{from.complex_id, "grade(" + std::to_string(i) + ",-1)", 0};

    return {SparseOperator(std::move(x_rows), from, std::move(x_part)),
            SparseOperator(std::move(y_rows), from, std::move(y_part))};
}

std::vector<std::pair<int, int>> ProductComplex::grades(int k) const {
    std::vector<std::pair<int, int>> out;
    for (int i = std::max(0, k - y_.dimension()); i <= std::min(k, x_.dimension()); ++i) {
        const int j = k - i;
        if (cellCount(i, j) > 0) out.emplace_back(i, j);
    }
    return out;
}

Eigen::Index ProductComplex::gradeOffset(int i, int j) const {
    Eigen::Index off = 0;
    for (const auto& [gi, gj] : grades(i + j)) {
        if (gi == i && gj == j) return off;
        off += cellCount(gi, gj);
    }
    throw std::invalid_argument("grade not present in its dimension");
}

Eigen::Index ProductComplex::dimensionSize(int k) const {
    Eigen::Index n = 0;
    for (const auto& [i, j] : grades(k)) n += cellCount(i, j);
    return n;
}

SparseOperator ProductComplex::fullBoundary(int k) const {
    const IndexSpace cols{x_.id() + "x" + y_.id(), "dimsum" + std::to_string(k), dimensionSize(k)};
    const IndexSpace rows{x_.id() + "x" + y_.id(), "dimsum" + std::to_string(k - 1),
                          k >= 1 ? dimensionSize(k - 1) : 0};
    std::vector<Eigen::Triplet<double>> trips;
    if (k >= 1) {
        for (const auto& [i, j] : grades(k)) {
            const Eigen::Index col_off = gradeOffset(i, j);
            auto [bx, by] = boundary(i, j);
            if (bx.rows() > 0) {
                const Eigen::Index row_off = gradeOffset(i - 1, j);
                const auto& m = bx.matrix();
                for (int c = 0; c < m.outerSize(); ++c)
                    for (SparseOperator::Matrix::InnerIterator it(m, c); it; ++it)
                        trips.emplace_back(row_off + it.row(), col_off + it.col(), it.value());
            }
            if (by.rows() > 0) {
                const Eigen::Index row_off = gradeOffset(i, j - 1);
                const auto& m = by.matrix();
                for (int c = 0; c < m.outerSize(); ++c)
                    for (SparseOperator::Matrix::InnerIterator it(m, c); it; ++it)
                        trips.emplace_back(row_off + it.row(), col_off + it.col(), it.value());
            }
        }
    }
    Eigen::SparseMatrix<double> mat(rows.size, cols.size);
    mat.setFromTriplets(trips.begin(), trips.end());
    return SparseOperator(rows, cols, std::move(mat));
}

SparseOperator ProductComplex::hodgeLaplacian(int i, int j, double alpha_x, double alpha_y) const {
    if (alpha_x < 0.0 || alpha_y < 0.0)
        throw std::invalid_argument("Laplacian weights must be nonnegative");
    const IndexSpace space = gradeSpace(i, j);

    Eigen::SparseMatrix<double> lx = prodtop::hodgeLaplacian(x_, i).matrix();
    Eigen::SparseMatrix<double> ly = prodtop::hodgeLaplacian(y_, j).matrix();
    Eigen::SparseMatrix<double> ix(x_.count(i), x_.count(i));
    ix.setIdentity();
    Eigen::SparseMatrix<double> iy(y_.count(j), y_.count(j));
    iy.setIdentity();

    Eigen::SparseMatrix<double> mat =
        alpha_x * Eigen::kroneckerProduct(lx, iy) + alpha_y * Eigen::kroneckerProduct(ix, ly);
    return SparseOperator(space, space, std::move(mat));
}

Eigen::MatrixXd unflattenSignal(const Eigen::VectorXd& flat, Eigen::Index nx, Eigen::Index ny) {
    if (flat.size() != nx * ny)
        throw std::invalid_argument("signal length does not match grade shape");
    // X outer, Y inner: row-major layout of an nx-by-ny grid.
    return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
               flat.data(), nx, ny)
        .eval();
}

Eigen::VectorXd flattenSignal(const Eigen::MatrixXd& grid) {
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm = grid;
    return Eigen::Map<const Eigen::VectorXd>(rm.data(), rm.size());
}

}  // namespace prodtop
