#pragma once

#include "dph/boundary_matrix.hpp"
#include "dph/image.hpp"

namespace dph {

// Filtered full cubical complex of an image: vertices at even coordinates of
// the (2nx-1)(2ny-1)(2nz-1) extended grid carry the voxel values, every other
// cell carries the max over the vertices of its closure (lower-star rule),
// and cells are ordered by (value, dimension, linearized coordinate).
struct cubical_filtration {
  boundary_matrix matrix;
  std::vector<double> values;   // values[j-1] = filtration value of cell j
};

// Cell count (2a-1)(2b-1)(2c-1); throws std::overflow_error past index width.
index_t cubical_cell_count(std::array<std::int64_t, 3> extents);

cubical_filtration build_cubical(const image3d& img);

// Removes all cells of dimension > cap and compacts indices, preserving order.
void truncate_to_max_dim(cubical_filtration& f, dim_t cap);

}  // namespace dph
