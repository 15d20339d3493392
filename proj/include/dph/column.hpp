#pragma once

#include <cstdint>
#include <vector>

namespace dph {

// Filtration indices are 1-based and 64-bit; inputs past 2^31 cells are in scope.
using index_t = std::int64_t;
using dim_t = std::int16_t;

// A Z2 chain: the strictly increasing 1-based indices of the cells present.
using column = std::vector<index_t>;

// Largest stored index; 0 for the zero column.
inline index_t pivot(const column& c) { return c.empty() ? index_t(0) : c.back(); }

bool strictly_increasing(const column& c);

// target <- target + source over Z2 (symmetric difference of index sets).
// scratch is reused between calls to avoid reallocation in reduction loops.
void add_into(column& target, const column& source, column& scratch);

column add(const column& a, const column& b);

}  // namespace dph
