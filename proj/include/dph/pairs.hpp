#pragma once

#include <compare>
#include <limits>
#include <vector>

#include "dph/boundary_matrix.hpp"

namespace dph {

// Sentinel death index for essential classes in persistence records.
inline constexpr index_t infinite_death = std::numeric_limits<index_t>::max();

struct persistence_pair {
  index_t birth = 0;
  index_t death = 0;   // > birth; never infinite_death inside a reduction_result
  dim_t dim = 0;       // dimension of the class (= dims[birth])

  friend auto operator<=>(const persistence_pair&, const persistence_pair&) = default;
};

struct essential_class {
  index_t index = 0;
  dim_t dim = 0;

  friend auto operator<=>(const essential_class&, const essential_class&) = default;
};

struct reduction_result {
  boundary_matrix reduced;
  std::vector<persistence_pair> pairs;       // sorted by (dim, birth)
  std::vector<essential_class> essentials;   // sorted by (dim, index)
};

// Canonical order used throughout: (dim, birth[, death]).
void sort_canonical(std::vector<persistence_pair>& pairs);
void sort_canonical(std::vector<essential_class>& essentials);

// beta_d = number of essential classes of dimension d, for d in [0, d_max].
std::vector<std::int64_t> betti_numbers(const reduction_result& res, dim_t d_max);

}  // namespace dph
