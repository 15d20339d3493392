#pragma once

#include <memory>
#include <mutex>
#include <set>
#include <unordered_map>

#include "dph/node.hpp"

namespace dph {

struct run_options {
  runtime_observer* observer = nullptr;
  bool keep_stores = false;   // retain per-node pivot stores in the result
};

struct distributed_result {
  gathered_result merged;
  std::vector<node_result> nodes;      // per-node pairs + metrics, by id
  std::vector<node_output> outputs;    // only when run_options::keep_stores
};

// Runs all p node workers in threads over capacity-1 rendezvous channels, with
// a barrier between dimensions, then gathers. The matrix outlives the call.
distributed_result run_in_process(const boundary_matrix& m, int p, run_options opts = {});

// Observer that enforces the single-ownership and blocking-rule invariants on
// every transition: each column index is resident on exactly one node (as
// unreduced work, a stored reduced column, a zero-report, or a clearing
// record), packages move only along edges (i, i-1), and a node holds at most
// one received-but-unconsumed package at a time. Violations throw
// consistency_error out of the offending node thread.
class ownership_checker final : public runtime_observer {
 public:
  explicit ownership_checker(index_t n);

  void on_columns_loaded(int node, dim_t dim, const work_set& work) override;
  void on_columns_cleared(int node, std::span<const index_t> cleared) override;
  void on_block_begin(int node, block_id block, dim_t dim) override;
  void on_block_end(int node, block_id block, dim_t dim) override;
  void on_column_stored(int node, index_t pivot, index_t col_index) override;
  void on_column_zeroed(int node, index_t col_index) override;
  void on_package_sent(int node, int dest, const package& pkg, dim_t dim) override;
  void on_package_received(int node, int source, const package& pkg, dim_t dim) override;

  // Post-run checks: nothing left in transit, every tracked column settled.
  void finish() const;

  std::uint64_t non_neighbor_messages() const { return non_neighbor_messages_; }

 private:
  enum class where : std::uint8_t { untracked, work, transit, stored, zeroed, cleared };
  struct state {
    where at = where::untracked;
    int holder = 0;   // node id, or sender id while in transit
  };

  void move_to(index_t col, where from, int from_holder, where to, int to_holder);

  mutable std::mutex mutex_;
  std::vector<state> states_;   // by column index, 1-based
  std::unordered_map<int, int> held_packages_;   // node -> received, not yet consumed
  std::uint64_t non_neighbor_messages_ = 0;
};

// Observer that records block begin/end events and checks each begin against
// the block dependency order (a block may begin only after (i, j-1) and
// (i+1, j) have ended).
class schedule_checker final : public runtime_observer {
 public:
  void on_block_begin(int node, block_id block, dim_t dim) override;
  void on_block_end(int node, block_id block, dim_t dim) override;

  std::size_t blocks_seen() const;

 private:
  mutable std::mutex mutex_;
  std::set<std::pair<int, int>> ended_;   // per current dimension wave
  dim_t current_dim_ = -1;
  std::size_t total_ = 0;
};

// Fan-out helper so tests can attach several observers to one run.
class observer_list final : public runtime_observer {
 public:
  void add(runtime_observer* obs) { observers_.push_back(obs); }

  void on_columns_loaded(int node, dim_t dim, const work_set& w) override {
    for (auto* o : observers_) o->on_columns_loaded(node, dim, w);
  }
  void on_columns_cleared(int node, std::span<const index_t> c) override {
    for (auto* o : observers_) o->on_columns_cleared(node, c);
  }
  void on_block_begin(int node, block_id b, dim_t d) override {
    for (auto* o : observers_) o->on_block_begin(node, b, d);
  }
  void on_block_end(int node, block_id b, dim_t d) override {
    for (auto* o : observers_) o->on_block_end(node, b, d);
  }
  void on_column_stored(int node, index_t p, index_t c) override {
    for (auto* o : observers_) o->on_column_stored(node, p, c);
  }
  void on_column_zeroed(int node, index_t c) override {
    for (auto* o : observers_) o->on_column_zeroed(node, c);
  }
  void on_package_sent(int node, int dest, const package& pkg, dim_t dim) override {
    for (auto* o : observers_) o->on_package_sent(node, dest, pkg, dim);
  }
  void on_package_received(int node, int source, const package& pkg, dim_t dim) override {
    for (auto* o : observers_) o->on_package_received(node, source, pkg, dim);
  }
  void on_dimension_done(int node, dim_t d) override {
    for (auto* o : observers_) o->on_dimension_done(node, d);
  }

 private:
  std::vector<runtime_observer*> observers_;
};

}  // namespace dph
