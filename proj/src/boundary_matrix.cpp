#include "dph/boundary_matrix.hpp"

#include <algorithm>

namespace dph {

dim_t boundary_matrix::max_dim() const {
  dim_t d = 0;
  for (dim_t x : dims) d = std::max(d, x);
  return d;
}

std::optional<matrix_violation> validate(const boundary_matrix& m) {
  const index_t n = m.size();
  if (m.dims.size() != m.columns.size())
    return matrix_violation{0, 0, "not upper-triangular: dims/columns size mismatch"};
  for (index_t j = 1; j <= n; ++j) {
    const column& col = m.columns[static_cast<std::size_t>(j - 1)];
    index_t prev = 0;
    for (index_t i : col) {
      if (i <= prev)
        return matrix_violation{i, j, "not upper-triangular: row indices not strictly increasing"};
      if (i >= j)
        return matrix_violation{i, j, "not upper-triangular"};
      if (m.dims[static_cast<std::size_t>(i - 1)] != m.dims[static_cast<std::size_t>(j - 1)] - 1)
        return matrix_violation{i, j, "dimension mismatch"};
      prev = i;
    }
  }
  return std::nullopt;
}

}  // namespace dph
