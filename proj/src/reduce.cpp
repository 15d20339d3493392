#include "dph/reduce.hpp"

#include <algorithm>
#include <cassert>

namespace dph {

namespace {

// Pairs and essentials read off a fully reduced matrix: a non-zero column is a
// death paired with its pivot; a zero column never occurring as a pivot is
// essential.
void collect(const boundary_matrix& reduced, const std::vector<index_t>& owner_of_pivot,
             reduction_result& out) {
  const index_t n = reduced.size();
  for (index_t i = 1; i <= n; ++i) {
    index_t j = owner_of_pivot[static_cast<std::size_t>(i)];
    if (j != 0)
      out.pairs.push_back({i, j, reduced.dims[static_cast<std::size_t>(i - 1)]});
    else if (reduced.columns[static_cast<std::size_t>(i - 1)].empty())
      out.essentials.push_back({i, reduced.dims[static_cast<std::size_t>(i - 1)]});
  }
  sort_canonical(out.pairs);
  sort_canonical(out.essentials);
}

}  // namespace

reduction_result standard_reduce(boundary_matrix m) {
  const index_t n = m.size();
  std::vector<index_t> owner(static_cast<std::size_t>(n) + 1, 0);   // pivot -> column
  column scratch;
  for (index_t j = 1; j <= n; ++j) {
    column& col = m.columns[static_cast<std::size_t>(j - 1)];
    index_t p = pivot(col);
    while (p != 0 && owner[static_cast<std::size_t>(p)] != 0) {
      add_into(col, m.columns[static_cast<std::size_t>(owner[static_cast<std::size_t>(p)] - 1)],
               scratch);
      p = pivot(col);
    }
    if (p != 0) owner[static_cast<std::size_t>(p)] = j;
  }
  reduction_result out;
  out.reduced = std::move(m);
  collect(out.reduced, owner, out);
  return out;
}

reduction_result twist_reduce(boundary_matrix m) {
  const index_t n = m.size();
  const dim_t top = m.max_dim();
  std::vector<index_t> owner(static_cast<std::size_t>(n) + 1, 0);

  // Columns of each dimension in increasing index order; built once.
  std::vector<std::vector<index_t>> by_dim(static_cast<std::size_t>(top) + 1);
  for (index_t j = 1; j <= n; ++j)
    by_dim[static_cast<std::size_t>(m.dims[static_cast<std::size_t>(j - 1)])].push_back(j);

  column scratch;
  for (dim_t d = top; d >= 1; --d) {
    for (index_t j : by_dim[static_cast<std::size_t>(d)]) {
      column& col = m.columns[static_cast<std::size_t>(j - 1)];
      if (owner[static_cast<std::size_t>(j)] != 0) {
        // j was a pivot in dimension d+1: cleared, no additions needed.
        col.clear();
        continue;
      }
      index_t p = pivot(col);
      while (p != 0 && owner[static_cast<std::size_t>(p)] != 0) {
        add_into(col, m.columns[static_cast<std::size_t>(owner[static_cast<std::size_t>(p)] - 1)],
                 scratch);
        p = pivot(col);
      }
      if (p != 0) owner[static_cast<std::size_t>(p)] = j;
    }
  }
  reduction_result out;
  out.reduced = std::move(m);
  collect(out.reduced, owner, out);
  return out;
}

}  // namespace dph
