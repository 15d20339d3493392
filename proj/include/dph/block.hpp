#pragma once

#include <vector>

#include "dph/column.hpp"

namespace dph {

struct work_column {
  index_t index = 0;   // global column index
  dim_t dim = 0;
  column rows;
};

// Unreduced columns of one column range, ascending by global index.
using work_set = std::vector<work_column>;

// Reduced columns with pivot in one row range (lo, hi], addressed densely by
// pivot offset. At most one column per pivot; a collision on insert is an
// internal-consistency error.
class pivot_store {
 public:
  pivot_store() = default;
  pivot_store(index_t lo, index_t hi);

  index_t lo() const { return lo_; }
  index_t hi() const { return hi_; }
  bool covers(index_t p) const { return lo_ < p && p <= hi_; }
  bool contains(index_t p) const;
  const work_column& at(index_t p) const;
  void insert(index_t p, work_column&& wc);
  std::size_t size() const { return filled_; }

  // Pivots inserted since the last call, in insertion order. The runtime
  // drains this once per dimension to drive clearing.
  std::vector<index_t> take_fresh_pivots();
  std::size_t fresh_count() const { return fresh_.size(); }
  index_t fresh_at(std::size_t k) const { return fresh_[k]; }

  template <typename F>
  void for_each(F&& f) const {   // f(pivot, stored work_column)
    for (std::size_t s = 0; s < slots_.size(); ++s)
      if (slots_[s].index != 0) f(lo_ + 1 + static_cast<index_t>(s), slots_[s]);
  }

 private:
  index_t lo_ = 0, hi_ = 0;
  std::vector<work_column> slots_;   // slot s holds pivot lo+1+s; index == 0 means empty
  std::size_t filled_ = 0;
  std::vector<index_t> fresh_;
};

// Block reduction: each work column, in increasing index order, is repeatedly
// added-to by the stored column sharing its pivot until the pivot leaves the
// store's row range or is no longer eliminable there. Columns ending with a
// pivot in the range enter the store; zero columns are recorded in zeroed and
// dropped; the rest form the returned residual (still ascending by index).
// Precondition (not locally checkable): the global matrix is reducible in this
// block, i.e. reduced at blocks (i, j-1) and (i+1, j).
work_set reduce_block(pivot_store& store, work_set work, std::vector<index_t>& zeroed,
                      column& scratch);

}  // namespace dph
