#pragma once

#include <iosfwd>
#include <string>

#include "prodtop/sparse_operator.hpp"

namespace prodtop {

/// Matrix Market coordinate format, real general. Integer-valued entries are
/// printed without a decimal point so integer operators round-trip exactly.
void writeMatrixMarket(std::ostream& out, const SparseOperator& op);
void writeMatrixMarket(const std::string& path, const SparseOperator& op);

Eigen::SparseMatrix<double> readMatrixMarket(std::istream& in);
Eigen::SparseMatrix<double> readMatrixMarket(const std::string& path);

}  // namespace prodtop
