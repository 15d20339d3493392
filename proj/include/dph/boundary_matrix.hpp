#pragma once

#include <optional>
#include <string>

#include "dph/column.hpp"

namespace dph {

// Boundary matrix of a cellwise filtration: column j lists the codimension-1
// faces of cell j, so the matrix is strictly upper-triangular.
struct boundary_matrix {
  std::vector<dim_t> dims;       // dims[j-1] = dimension of cell j
  std::vector<column> columns;   // columns[j-1] = boundary of cell j

  index_t size() const { return static_cast<index_t>(columns.size()); }
  dim_t max_dim() const;
};

struct matrix_violation {
  index_t row = 0;   // first offending entry (row, col)
  index_t col = 0;
  std::string reason;
};

// Checks strict upper-triangularity (with well-formed, strictly increasing
// columns) and the codimension-1 rule dims[i] = dims[j] - 1.
// Returns the first violation found, scanning columns left to right.
std::optional<matrix_violation> validate(const boundary_matrix& m);

}  // namespace dph
