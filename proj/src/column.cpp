#include "dph/column.hpp"

#include <algorithm>
#include <iterator>

namespace dph {

bool strictly_increasing(const column& c) {
  return std::adjacent_find(c.begin(), c.end(),
                            [](index_t a, index_t b) { return a >= b; }) == c.end();
}

void add_into(column& target, const column& source, column& scratch) {
  scratch.clear();
  std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(),
                                std::back_inserter(scratch));
  target.swap(scratch);
}

column add(const column& a, const column& b) {
  column out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::back_inserter(out));
  return out;
}

}  // namespace dph
