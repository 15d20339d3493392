#pragma once

#include <condition_variable>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "dph/package.hpp"

namespace dph {

struct transport_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// What Algorithm 2 needs from the network, and nothing more: node i only sends
// to node i-1 and only receives from node i+1, blocking, in order, at most one
// package in transit per node.
class node_transport {
 public:
  virtual ~node_transport() = default;
  virtual void send_to_prev(package&& pkg) = 0;
  virtual package receive_from_next() = 0;
};

// Capacity-1 rendezvous slot: put blocks while a package is pending, take
// blocks while empty. One per directed neighbor edge i -> i-1. poison() makes
// every blocked or future call throw transport_error, so a failing worker can
// release its neighbors instead of deadlocking the pipeline.
class package_channel {
 public:
  void put(package&& pkg);
  package take();
  void poison();

 private:
  std::mutex mutex_;
  std::condition_variable cv_;
  std::optional<package> slot_;
  bool poisoned_ = false;
};

// In-process transport for node i over shared channels. channel_to_prev /
// channel_from_next may be null for i == 1 / i == p respectively; using a
// missing edge is a logic error.
class in_process_transport final : public node_transport {
 public:
  in_process_transport(package_channel* to_prev, package_channel* from_next)
      : to_prev_(to_prev), from_next_(from_next) {}

  void send_to_prev(package&& pkg) override;
  package receive_from_next() override;

 private:
  package_channel* to_prev_;
  package_channel* from_next_;
};

}  // namespace dph
