#include "prodtop/matrix_market.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace prodtop {

void writeMatrixMarket(std::ostream& out, const SparseOperator& op) {
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << "% rows: " << op.rowSpace().describe() << "\n";
    out << "% cols: " << op.colSpace().describe() << "\n";
    out << op.rows() << " " << op.cols() << " " << op.nonZeros() << "\n";
    const auto& m = op.matrix();
    for (int c = 0; c < m.outerSize(); ++c) {
        for (SparseOperator::Matrix::InnerIterator it(m, c); it; ++it) {
            out << (it.row() + 1) << " " << (it.col() + 1) << " ";
            const double v = it.value();
            if (v == std::floor(v) && std::abs(v) < 1e15) {
                out << static_cast<long long>(v) << "\n";
            } else {
                out << std::setprecision(17) << v << "\n";
            }
        }
    }
}

void writeMatrixMarket(const std::string& path, const SparseOperator& op) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    writeMatrixMarket(f, op);
}

Eigen::SparseMatrix<double> readMatrixMarket(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("%%MatrixMarket", 0) != 0)
        throw std::runtime_error("not a Matrix Market file");
    if (line.find("coordinate") == std::string::npos || line.find("real") == std::string::npos)
        throw std::runtime_error("unsupported Matrix Market variant: " + line);

    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '%') break;
    }
    std::istringstream hdr(line);
    Eigen::Index rows, cols;
    long long nnz;
    if (!(hdr >> rows >> cols >> nnz)) throw std::runtime_error("malformed size line");

    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<std::size_t>(nnz));
    for (long long k = 0; k < nnz; ++k) {
        Eigen::Index r, c;
        double v;
        if (!(in >> r >> c >> v)) throw std::runtime_error("truncated Matrix Market entries");
        if (r < 1 || r > rows || c < 1 || c > cols)
            throw std::runtime_error("Matrix Market entry out of range");
        trips.emplace_back(r - 1, c - 1, v);
    }
    Eigen::SparseMatrix<double> m(rows, cols);
    m.setFromTriplets(trips.begin(), trips.end());
    return m;
}

Eigen::SparseMatrix<double> readMatrixMarket(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    return readMatrixMarket(f);
}

}  // namespace prodtop
