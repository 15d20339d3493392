#include "dph/runtime.hpp"

#include <thread>

namespace dph {

namespace {

// Dimension fence that can be torn down when a worker fails.
class abortable_barrier {
 public:
  explicit abortable_barrier(int parties) : parties_(parties) {}

  void arrive_and_wait() {
    std::unique_lock lock(mutex_);
    if (aborted_) throw transport_error("dimension barrier aborted");
    if (++arrived_ == parties_) {
      arrived_ = 0;
      ++generation_;
      cv_.notify_all();
      return;
    }
    std::size_t gen = generation_;
    cv_.wait(lock, [&] { return aborted_ || generation_ != gen; });
    if (aborted_) throw transport_error("dimension barrier aborted");
  }

  void abort() {
    std::lock_guard lock(mutex_);
    aborted_ = true;
    cv_.notify_all();
  }

 private:
  std::mutex mutex_;
  std::condition_variable cv_;
  int parties_;
  int arrived_ = 0;
  std::size_t generation_ = 0;
  bool aborted_ = false;
};

}  // namespace

distributed_result run_in_process(const boundary_matrix& m, int p, run_options opts) {
  range_partition partition = make_partition(m.size(), p);

  std::vector<package_channel> channels(p > 1 ? static_cast<std::size_t>(p - 1) : 0);
  abortable_barrier fence(p);
  std::vector<node_output> outputs(static_cast<std::size_t>(p));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(p));

  auto tear_down = [&] {
    fence.abort();
    for (package_channel& c : channels) c.poison();
  };

  std::vector<std::thread> workers;
  workers.reserve(static_cast<std::size_t>(p));
  for (int i = 1; i <= p; ++i) {
    workers.emplace_back([&, i] {
      try {
        memory_provider provider(m, partition.lower(i), partition.upper(i));
        // channels[k] is the edge from node k+2 down to node k+1
        in_process_transport transport(
            i > 1 ? &channels[static_cast<std::size_t>(i - 2)] : nullptr,
            i < p ? &channels[static_cast<std::size_t>(i - 1)] : nullptr);
        node_config cfg;
        cfg.id = i;
        cfg.partition = partition;
        cfg.observer = opts.observer;
        cfg.dimension_fence = [&](dim_t) { fence.arrive_and_wait(); };
        outputs[static_cast<std::size_t>(i - 1)] = run_node(cfg, provider, transport);
      } catch (...) {
        errors[static_cast<std::size_t>(i - 1)] = std::current_exception();
        tear_down();
      }
    });
  }
  for (std::thread& w : workers) w.join();

  // Prefer the originating failure over the teardown noise it caused.
  std::exception_ptr first;
  for (const std::exception_ptr& e : errors) {
    if (!e) continue;
    if (!first) first = e;
    try {
      std::rethrow_exception(e);
    } catch (const transport_error&) {
    } catch (...) {
      first = e;
      break;
    }
  }
  if (first) std::rethrow_exception(first);

  distributed_result result;
  result.nodes.reserve(outputs.size());
  for (const node_output& out : outputs) result.nodes.push_back(summarize(out, m.dims));
  result.merged = gather_results(partition, result.nodes, m.dims);
  if (opts.keep_stores) result.outputs = std::move(outputs);
  return result;
}

ownership_checker::ownership_checker(index_t n)
    : states_(static_cast<std::size_t>(n) + 1) {}

void ownership_checker::move_to(index_t col, where from, int from_holder, where to,
                                int to_holder) {
  state& s = states_[static_cast<std::size_t>(col)];
  if (s.at != from || (from != where::untracked && s.holder != from_holder))
    throw consistency_error("column " + std::to_string(col) +
                            " changed hands out of order (ownership violated)");
  s.at = to;
  s.holder = to_holder;
}

void ownership_checker::on_columns_loaded(int node, dim_t, const work_set& work) {
  std::lock_guard lock(mutex_);
  for (const work_column& wc : work)
    move_to(wc.index, where::untracked, 0, where::work, node);
}

void ownership_checker::on_columns_cleared(int node, std::span<const index_t> cleared) {
  std::lock_guard lock(mutex_);
  for (index_t c : cleared) move_to(c, where::untracked, 0, where::cleared, node);
}

void ownership_checker::on_block_begin(int node, block_id, dim_t) {
  std::lock_guard lock(mutex_);
  held_packages_[node] = 0;   // the received package is consumed into the work set
}

void ownership_checker::on_block_end(int, block_id, dim_t) {}

void ownership_checker::on_column_stored(int node, index_t, index_t col_index) {
  std::lock_guard lock(mutex_);
  move_to(col_index, where::work, node, where::stored, node);
}

void ownership_checker::on_column_zeroed(int node, index_t col_index) {
  std::lock_guard lock(mutex_);
  move_to(col_index, where::work, node, where::zeroed, node);
}

void ownership_checker::on_package_sent(int node, int dest, const package& pkg, dim_t) {
  std::lock_guard lock(mutex_);
  if (dest != node - 1) ++non_neighbor_messages_;
  for (const work_column& wc : pkg.columns)
    move_to(wc.index, where::work, node, where::transit, node);
}

void ownership_checker::on_package_received(int node, int source, const package& pkg, dim_t) {
  std::lock_guard lock(mutex_);
  if (source != node + 1) ++non_neighbor_messages_;
  int& held = held_packages_[node];
  if (++held > 1)
    throw consistency_error("node " + std::to_string(node) +
                            " held more than one package at a time");
  for (const work_column& wc : pkg.columns)
    move_to(wc.index, where::transit, source, where::work, node);
}

void ownership_checker::finish() const {
  std::lock_guard lock(mutex_);
  for (std::size_t k = 1; k < states_.size(); ++k) {
    const state& s = states_[k];
    if (s.at == where::transit)
      throw consistency_error("column " + std::to_string(k) + " left in transit");
    if (s.at == where::work)
      throw consistency_error("column " + std::to_string(k) + " left unreduced on node " +
                              std::to_string(s.holder));
  }
}

void schedule_checker::on_block_begin(int, block_id block, dim_t dim) {
  std::lock_guard lock(mutex_);
  if (dim != current_dim_) {
    ended_.clear();
    current_dim_ = dim;
  }
  for (const block_id& dep : block_dependencies(block))
    if (!ended_.contains({dep.row, dep.col}))
      throw consistency_error("block (" + std::to_string(block.row) + "," +
                              std::to_string(block.col) + ") began before (" +
                              std::to_string(dep.row) + "," + std::to_string(dep.col) +
                              ") ended");
}

void schedule_checker::on_block_end(int, block_id block, dim_t) {
  std::lock_guard lock(mutex_);
  ended_.insert({block.row, block.col});
  ++total_;
}

std::size_t schedule_checker::blocks_seen() const {
  std::lock_guard lock(mutex_);
  return total_;
}

}  // namespace dph
