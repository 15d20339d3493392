#include "dph/partition.hpp"

#include <algorithm>
#include <stdexcept>

namespace dph {

int range_partition::range_of(index_t k) const {
  // First bound >= k; range i covers (r_{i-1}, r_i].
  auto it = std::lower_bound(bounds.begin(), bounds.end(), k);
  return static_cast<int>(it - bounds.begin());
}

range_partition make_partition(index_t n, int p) {
  if (p < 1) throw std::invalid_argument("make_partition: node count must be at least 1");
  if (static_cast<index_t>(p) > n)
    throw std::invalid_argument("make_partition: node count exceeds cell count");
  range_partition part;
  part.bounds.resize(static_cast<std::size_t>(p) + 1);
  for (int i = 0; i <= p; ++i) {
    auto num = static_cast<unsigned __int128>(i) * static_cast<unsigned __int128>(n);
    part.bounds[static_cast<std::size_t>(i)] =
        static_cast<index_t>((num + static_cast<unsigned __int128>(p) - 1) / p);
  }
  return part;
}

std::vector<block_id> block_dependencies(block_id b) {
  std::vector<block_id> deps;
  if (b.col - 1 >= b.row) deps.push_back({b.row, b.col - 1});
  if (b.row + 1 <= b.col) deps.push_back({b.row + 1, b.col});
  return deps;
}

bool blocks_independent(block_id a, block_id b) {
  return (a.row < b.row && a.col < b.col) || (a.row > b.row && a.col > b.col);
}

std::vector<block_id> all_blocks(int p) {
  std::vector<block_id> out;
  for (int i = 1; i <= p; ++i)
    for (int j = i; j <= p; ++j) out.push_back({i, j});
  return out;
}

}  // namespace dph
