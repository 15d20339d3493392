#include "dph/pairs.hpp"

#include <algorithm>

namespace dph {

void sort_canonical(std::vector<persistence_pair>& pairs) {
  std::sort(pairs.begin(), pairs.end(), [](const persistence_pair& a, const persistence_pair& b) {
    return std::tie(a.dim, a.birth, a.death) < std::tie(b.dim, b.birth, b.death);
  });
}

void sort_canonical(std::vector<essential_class>& essentials) {
  std::sort(essentials.begin(), essentials.end(),
            [](const essential_class& a, const essential_class& b) {
              return std::tie(a.dim, a.index) < std::tie(b.dim, b.index);
            });
}

std::vector<std::int64_t> betti_numbers(const reduction_result& res, dim_t d_max) {
  std::vector<std::int64_t> betti(static_cast<std::size_t>(d_max) + 1, 0);
  for (const essential_class& e : res.essentials)
    if (e.dim <= d_max) ++betti[static_cast<std::size_t>(e.dim)];
  return betti;
}

}  // namespace dph
