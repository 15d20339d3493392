#pragma once

#include <vector>

#include "dph/column.hpp"

namespace dph {

// Range partition 0 = r_0 < r_1 < ... < r_p = n. Range i (1-based) is the
// interval of indices k with r_{i-1} < k <= r_i.
struct range_partition {
  std::vector<index_t> bounds;

  int count() const { return static_cast<int>(bounds.size()) - 1; }
  index_t n() const { return bounds.back(); }
  index_t lower(int i) const { return bounds[static_cast<std::size_t>(i) - 1]; }
  index_t upper(int i) const { return bounds[static_cast<std::size_t>(i)]; }
  bool in_range(index_t k, int i) const { return lower(i) < k && k <= upper(i); }
  int range_of(index_t k) const;   // 1-based range containing k in [1, n]
};

// Bounds r_i = ceil(i*n/p); range sizes differ by at most one.
// Throws std::invalid_argument unless 1 <= p <= n.
range_partition make_partition(index_t n, int p);

// Block (i, j): rows from range i, columns from range j, with i <= j.
struct block_id {
  int row = 0;
  int col = 0;

  friend bool operator==(const block_id&, const block_id&) = default;
};

// The blocks whose reduction must precede block b: (i, j-1) and (i+1, j),
// restricted to valid upper blocks. Diagonal blocks have no dependencies.
std::vector<block_id> block_dependencies(block_id b);

// Two blocks may be reduced concurrently iff (i<i' and j<j') or (i>i' and j>j').
bool blocks_independent(block_id a, block_id b);

std::vector<block_id> all_blocks(int p);

}  // namespace dph
