#include "dph/transport.hpp"

namespace dph {

void package_channel::put(package&& pkg) {
  std::unique_lock lock(mutex_);
  cv_.wait(lock, [&] { return poisoned_ || !slot_.has_value(); });
  if (poisoned_) throw transport_error("channel poisoned");
  slot_.emplace(std::move(pkg));
  cv_.notify_all();
}

package package_channel::take() {
  std::unique_lock lock(mutex_);
  cv_.wait(lock, [&] { return poisoned_ || slot_.has_value(); });
  if (poisoned_) throw transport_error("channel poisoned");
  package pkg = std::move(*slot_);
  slot_.reset();
  cv_.notify_all();
  return pkg;
}

void package_channel::poison() {
  std::lock_guard lock(mutex_);
  poisoned_ = true;
  cv_.notify_all();
}

void in_process_transport::send_to_prev(package&& pkg) {
  if (to_prev_ == nullptr)
    throw std::logic_error("in_process_transport: node 1 never sends");
  to_prev_->put(std::move(pkg));
}

package in_process_transport::receive_from_next() {
  if (from_next_ == nullptr)
    throw std::logic_error("in_process_transport: node p never receives");
  return from_next_->take();
}

}  // namespace dph
