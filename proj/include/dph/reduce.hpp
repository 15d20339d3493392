#pragma once

#include "dph/pairs.hpp"

namespace dph {

// Standard left-to-right reduction. Processes columns in increasing order and
// adds previously reduced columns (found through a pivot lookup table) until
// the column's pivot is unique or the column is zero.
reduction_result standard_reduce(boundary_matrix m);

// Reduction with the clearing optimization: dimensions are processed in
// decreasing order, and a column whose index was recorded as a pivot in the
// dimension above is zeroed without any column additions. Produces the same
// pairs and essentials as standard_reduce on every boundary matrix.
reduction_result twist_reduce(boundary_matrix m);

}  // namespace dph
