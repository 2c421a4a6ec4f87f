#pragma once

#include <string>

#include "prodtop/cell_complex.hpp"
#include "prodtop/simplicial_complex.hpp"

namespace prodtop {

/// JSON complex files. Simplicial: {"top_simplices": [[1,2,3],[3,4]]}.
/// Cellular: {"cells": [{"id": "...", "dim": k, "boundary": [["id", s], ...]}]}.
/// A file containing either shape loads as a cell complex (SCs convert).
SimplicialComplex readSimplicialComplexJson(const std::string& path);
AbstractCellComplex readCellComplexJson(const std::string& path);

void writeSimplicialComplexJson(const std::string& path, const SimplicialComplex& sc);
void writeCellComplexJson(const std::string& path, const AbstractCellComplex& cc);

}  // namespace prodtop
