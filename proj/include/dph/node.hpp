#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>

#include "dph/partition.hpp"
#include "dph/pairs.hpp"
#include "dph/transport.hpp"

namespace dph {

struct protocol_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct consistency_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Communication ledger per node, mirroring the reported table columns: message
// and byte totals per destination, largest single package, and the peak number
// of columns resident in node state (pivot store + live work set).
struct metrics_ledger {
  std::map<int, std::uint64_t> messages_to;
  std::map<int, std::uint64_t> bytes_to;
  std::uint64_t max_package_bytes = 0;
  std::uint64_t peak_resident_columns = 0;

  void record_send(int dest, std::uint64_t bytes) {
    ++messages_to[dest];
    bytes_to[dest] += bytes;
    if (bytes > max_package_bytes) max_package_bytes = bytes;
  }
  void observe_resident(std::uint64_t count) {
    if (count > peak_resident_columns) peak_resident_columns = count;
  }
};

// Serves a node the columns of its own index range, one dimension at a time.
class column_provider {
 public:
  virtual ~column_provider() = default;
  virtual index_t cell_count() const = 0;
  virtual dim_t max_dimension() const = 0;   // global, identical on all nodes
  // Columns of the node's range with this dimension, ascending by index.
  virtual work_set load_dimension(dim_t d) = 0;
};

// Provider over an in-memory matrix shared by all in-process nodes.
class memory_provider final : public column_provider {
 public:
  memory_provider(const boundary_matrix& m, index_t lo, index_t hi)
      : matrix_(&m), lo_(lo), hi_(hi) {}

  index_t cell_count() const override { return matrix_->size(); }
  dim_t max_dimension() const override { return matrix_->max_dim(); }
  work_set load_dimension(dim_t d) override;

 private:
  const boundary_matrix* matrix_;
  index_t lo_, hi_;
};

// Test/verification hooks into a running node. Callbacks fire from node
// threads; implementations synchronize internally.
struct runtime_observer {
  virtual ~runtime_observer() = default;
  virtual void on_columns_loaded(int node, dim_t dim, const work_set& work) {}
  virtual void on_columns_cleared(int node, std::span<const index_t> cleared) {}
  virtual void on_block_begin(int node, block_id block, dim_t dim) {}
  virtual void on_block_end(int node, block_id block, dim_t dim) {}
  virtual void on_column_stored(int node, index_t pivot, index_t col_index) {}
  virtual void on_column_zeroed(int node, index_t col_index) {}
  virtual void on_package_sent(int node, int dest, const package& pkg, dim_t dim) {}
  virtual void on_package_received(int node, int source, const package& pkg, dim_t dim) {}
  virtual void on_dimension_done(int node, dim_t dim) {}
};

struct node_config {
  int id = 1;
  range_partition partition;
  runtime_observer* observer = nullptr;            // optional
  std::function<void(dim_t)> dimension_fence;      // optional, called once per dimension
};

struct node_output {
  int id = 1;
  pivot_store store;
  std::vector<index_t> zeroed;    // reduced to zero during block reduction
  std::vector<index_t> cleared;   // zeroed by clearing at load time
  metrics_ledger metrics;
};

// Algorithm 2 with distributed clearing: for each dimension d from the top
// down to 1, load the node's range-d columns, clear the ones whose index was a
// pivot in dimension d+1, then for j = i..p reduce block (i, j), send the
// residual to node i-1 (i > 1), and receive the range-(j+1) work from node i+1
// (j < p).
node_output run_node(const node_config& cfg, column_provider& provider,
                     node_transport& transport);

// Per-node result in coordinator-friendly form (pairs extracted from the store).
struct node_result {
  int id = 1;
  std::vector<persistence_pair> pairs;
  std::vector<index_t> zeroed;
  std::vector<index_t> cleared;
  metrics_ledger metrics;
};

node_result summarize(const node_output& out, std::span<const dim_t> dims);

struct gathered_result {
  std::vector<persistence_pair> pairs;       // sorted by (dim, birth)
  std::vector<essential_class> essentials;   // sorted by (dim, index)
};

// Merges per-node results into the global pair set and essential classes,
// verifying the single-classification invariants: pivots distinct across
// nodes and inside their owner's range, deaths distinct, no index both pivot
// and zero-reported (clearing records excuse cleared pivots), conservation
// 2|pairs| + |essentials| = n. Throws consistency_error on violation.
gathered_result gather_results(const range_partition& partition,
                               std::span<const node_result> results,
                               std::span<const dim_t> dims);

}  // namespace dph
