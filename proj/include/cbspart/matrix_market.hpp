#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cbspart/sparse_matrix.hpp"

namespace cbspart {

/// Reads a `%%MatrixMarket matrix coordinate real symmetric` file (integer
/// values also accepted). Rejects non-square, non-symmetric and non-coordinate
/// headers, missing or nonpositive diagonal entries, and duplicate entries.
/// Indices are converted from the 1-based file convention.
SparseSymMatrix read_matrix_market(const std::string& path);
SparseSymMatrix read_matrix_market(std::istream& in, const std::string& name);

/// Writes the lower triangle in coordinate symmetric format. `comments` are
/// emitted as '%' lines after the header.
void write_matrix_market(const std::string& path, const SparseSymMatrix& a,
                         const std::vector<std::string>& comments = {});

}  // namespace cbspart
