#pragma once

#include <string>
#include <vector>

#include "dph/node.hpp"

namespace dph {

// Aggregate view of one run's communication, mirroring the reported tables:
// total traffic, the heaviest neighbor edge, the largest single package, and
// the per-node peak of resident columns.
struct metrics_totals {
  std::uint64_t messages = 0;
  std::uint64_t bytes = 0;
  std::uint64_t max_edge_bytes = 0;
  std::uint64_t max_package_bytes = 0;
  std::uint64_t max_peak_resident_columns = 0;
};

metrics_totals summarize_metrics(std::span<const node_result> nodes);

// Deterministic JSON report: run context, one row per node, totals.
void write_metrics_report(const std::string& path, const std::string& mode, index_t cells,
                          dim_t max_dim, std::span<const node_result> nodes);

struct metrics_report {
  std::string mode;
  int nodes = 0;
  index_t cells = 0;
  metrics_totals totals;
  std::vector<std::pair<int, metrics_ledger>> per_node;
};

metrics_report read_metrics_report(const std::string& path);

}  // namespace dph
