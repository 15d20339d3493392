#include "dph/block.hpp"

#include <stdexcept>

namespace dph {

pivot_store::pivot_store(index_t lo, index_t hi) : lo_(lo), hi_(hi) {
  slots_.resize(static_cast<std::size_t>(hi - lo));
}

bool pivot_store::contains(index_t p) const {
  return covers(p) && slots_[static_cast<std::size_t>(p - lo_ - 1)].index != 0;
}

const work_column& pivot_store::at(index_t p) const {
  return slots_[static_cast<std::size_t>(p - lo_ - 1)];
}

void pivot_store::insert(index_t p, work_column&& wc) {
  if (!covers(p)) throw std::logic_error("pivot_store: pivot outside owned range");
  work_column& slot = slots_[static_cast<std::size_t>(p - lo_ - 1)];
  if (slot.index != 0)
    throw std::logic_error("pivot_store: two reduced columns share pivot " + std::to_string(p));
  slot = std::move(wc);
  ++filled_;
  fresh_.push_back(p);
}

std::vector<index_t> pivot_store::take_fresh_pivots() {
  std::vector<index_t> out;
  out.swap(fresh_);
  return out;
}

work_set reduce_block(pivot_store& store, work_set work, std::vector<index_t>& zeroed,
                      column& scratch) {
  work_set residual;
  for (work_column& wc : work) {
    index_t p = pivot(wc.rows);
    while (store.contains(p)) {
      // Lemma 2: the matched stored column is reduced and sits to the left.
      add_into(wc.rows, store.at(p).rows, scratch);
      p = pivot(wc.rows);
    }
    if (p == 0) {
      zeroed.push_back(wc.index);
    } else if (store.covers(p)) {
      store.insert(p, std::move(wc));
    } else if (p < store.lo()) {
      residual.push_back(std::move(wc));
    } else {
      // Pivot above the owned range: the block preconditions were violated.
      throw std::logic_error("reduce_block: column " + std::to_string(wc.index) +
                             " arrived with pivot " + std::to_string(p) +
                             " above row range (" + std::to_string(store.lo()) + ", " +
                             std::to_string(store.hi()) + "]");
    }
  }
  return residual;
}

}  // namespace dph
