#include <doctest.h>

#include <map>
#include <mutex>
#include <random>

#include "dph/reduce.hpp"
#include "dph/runtime.hpp"
#include "support/generators.hpp"

using namespace dph;

namespace {

// Counts packages per (sender, dimension) and records payload sizes.
class traffic_counter final : public runtime_observer {
 public:
  void on_package_sent(int node, int dest, const package& pkg, dim_t dim) override {
    std::lock_guard lock(mutex_);
    sent_[{node, dim}] += 1;
    dests_[{node, dest}] += 1;
    payload_[{node, dim}] += pkg.columns.size();
  }

  std::uint64_t sent(int node, dim_t dim) const {
    std::lock_guard lock(mutex_);
    auto it = sent_.find({node, dim});
    return it == sent_.end() ? 0 : it->second;
  }
  std::uint64_t columns_sent(int node, dim_t dim) const {
    std::lock_guard lock(mutex_);
    auto it = payload_.find({node, dim});
    return it == payload_.end() ? 0 : it->second;
  }
  std::map<std::pair<int, int>, std::uint64_t> destinations() const {
    std::lock_guard lock(mutex_);
    return dests_;
  }

 private:
  mutable std::mutex mutex_;
  std::map<std::pair<int, dim_t>, std::uint64_t> sent_;
  std::map<std::pair<int, dim_t>, std::uint64_t> payload_;
  std::map<std::pair<int, int>, std::uint64_t> dests_;
};

void check_against_oracle(const boundary_matrix& m, int p, bool instrument = true) {
  reduction_result oracle = standard_reduce(m);

  observer_list observers;
  ownership_checker ownership(m.size());
  schedule_checker schedule;
  traffic_counter traffic;
  observers.add(&ownership);
  observers.add(&schedule);
  observers.add(&traffic);

  run_options opts;
  if (instrument) opts.observer = &observers;
  distributed_result res = run_in_process(m, p, opts);

  CHECK(res.merged.pairs == oracle.pairs);
  CHECK(res.merged.essentials == oracle.essentials);

  if (instrument) {
    ownership.finish();
    CHECK(ownership.non_neighbor_messages() == 0);
    const dim_t top = m.max_dim();
    CHECK(schedule.blocks_seen() ==
          static_cast<std::size_t>(top) * static_cast<std::size_t>(p) *
              static_cast<std::size_t>(p + 1) / 2);
    // Exactly p - i + 1 packages per processed dimension from node i (i > 1).
    for (int i = 2; i <= p; ++i)
      for (dim_t d = top; d >= 1; --d)
        CHECK(traffic.sent(i, d) == static_cast<std::uint64_t>(p - i + 1));
    for (const auto& [edge, count] : traffic.destinations())
      CHECK(edge.second == edge.first - 1);
  }
}

}  // namespace

TEST_SUITE_BEGIN("runtime");

TEST_CASE("triangle across two nodes merges to the oracle's pairs") {
  boundary_matrix m = testing::triangle_matrix();
  traffic_counter traffic;
  run_options opts;
  opts.observer = &traffic;
  distributed_result res = run_in_process(m, 2, opts);

  reduction_result oracle = standard_reduce(m);
  CHECK(res.merged.pairs == oracle.pairs);
  CHECK(res.merged.essentials == oracle.essentials);

  // One package per processed dimension; the dimension-2 residual is empty.
  CHECK(traffic.sent(2, 2) == 1);
  CHECK(traffic.sent(2, 1) == 1);
  CHECK(traffic.columns_sent(2, 2) == 0);
  CHECK(res.nodes[1].metrics.messages_to.at(1) == 2);
  // Clearing drops column 6 at node 2 before the dimension-1 block, so the
  // dimension-1 package carries a single column.
  CHECK(traffic.columns_sent(2, 1) == 1);
  CHECK(res.nodes[1].cleared == std::vector<index_t>{6});
}

TEST_CASE("a single node reproduces the sequential oracle without messages") {
  std::mt19937_64 rng(5);
  boundary_matrix m = testing::random_complex(rng, 80);
  distributed_result res = run_in_process(m, 1);
  reduction_result oracle = standard_reduce(m);
  CHECK(res.merged.pairs == oracle.pairs);
  CHECK(res.merged.essentials == oracle.essentials);
  CHECK(res.nodes[0].metrics.messages_to.empty());
}

TEST_CASE("random filtered complexes, p in {2,3,4}, fully instrumented") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 12; ++trial) {
    boundary_matrix m = testing::random_complex(rng, 200);
    for (int p : {2, 3, 4}) {
      if (static_cast<index_t>(p) > m.size()) continue;
      CAPTURE(trial);
      CAPTURE(p);
      check_against_oracle(m, p);
    }
  }
}

TEST_CASE("the union of the stores is a reduction of the input") {
  std::mt19937_64 rng(73);
  boundary_matrix m = testing::random_complex(rng, 150);
  run_options opts;
  opts.keep_stores = true;
  distributed_result res = run_in_process(m, 3, opts);

  // Rebuild the full reduced matrix: stored columns at their global index,
  // everything else zero.
  boundary_matrix reduced;
  reduced.dims = m.dims;
  reduced.columns.assign(static_cast<std::size_t>(m.size()), {});
  std::vector<bool> seen_pivot(static_cast<std::size_t>(m.size()) + 1, false);
  for (const node_output& out : res.outputs) {
    out.store.for_each([&](index_t piv, const work_column& wc) {
      reduced.columns[static_cast<std::size_t>(wc.index - 1)] = wc.rows;
      CHECK(pivot(wc.rows) == piv);
      CHECK(!seen_pivot[static_cast<std::size_t>(piv)]);
      seen_pivot[static_cast<std::size_t>(piv)] = true;
    });
  }
  CHECK(!validate(reduced).has_value());
}

TEST_CASE("repeated runs are deterministic") {
  std::mt19937_64 rng(77);
  boundary_matrix m = testing::random_complex(rng, 180);
  distributed_result a = run_in_process(m, 3);
  distributed_result b = run_in_process(m, 3);
  CHECK(a.merged.pairs == b.merged.pairs);
  CHECK(a.merged.essentials == b.merged.essentials);
  REQUIRE(a.nodes.size() == b.nodes.size());
  for (std::size_t k = 0; k < a.nodes.size(); ++k) {
    CHECK(a.nodes[k].metrics.messages_to == b.nodes[k].metrics.messages_to);
    CHECK(a.nodes[k].metrics.bytes_to == b.nodes[k].metrics.bytes_to);
    CHECK(a.nodes[k].metrics.max_package_bytes == b.nodes[k].metrics.max_package_bytes);
    CHECK(a.nodes[k].metrics.peak_resident_columns ==
          b.nodes[k].metrics.peak_resident_columns);
  }
}

TEST_CASE("gather rejects a duplicate pivot across nodes") {
  range_partition part = make_partition(6, 2);
  std::vector<dim_t> dims{0, 0, 0, 1, 1, 1};
  node_result a;
  a.id = 1;
  a.pairs.push_back({3, 4, 0});
  node_result b;
  b.id = 2;
  b.pairs.push_back({3, 5, 0});   // pivot 3 again, and outside node 2's range
  std::vector<node_result> results{a, b};
  CHECK_THROWS_AS(gather_results(part, results, dims), consistency_error);
}

TEST_CASE("gather rejects an index that is both pivot and zero-report") {
  range_partition part = make_partition(4, 1);
  std::vector<dim_t> dims{0, 0, 1, 1};
  node_result a;
  a.id = 1;
  a.pairs.push_back({2, 3, 0});
  a.zeroed.push_back(2);   // 2 is already a pivot and was never cleared
  a.zeroed.push_back(4);
  std::vector<node_result> results{a};
  CHECK_THROWS_AS(gather_results(part, results, dims), consistency_error);
}

TEST_CASE("gather accepts the cleared-pivot pattern and conserves indices") {
  range_partition part = make_partition(4, 1);
  std::vector<dim_t> dims{0, 0, 1, 2};
  node_result a;
  a.id = 1;
  a.pairs.push_back({2, 3, 0});
  a.pairs.push_back({3, 4, 1});
  a.cleared.push_back(3);   // 3 was cleared, and is a pivot: consistent
  std::vector<node_result> results{a};
  gathered_result g = gather_results(part, results, dims);
  CHECK(g.pairs.size() == 2);
  CHECK(g.essentials == std::vector<essential_class>{{1, 0}});
}

TEST_SUITE_END();
