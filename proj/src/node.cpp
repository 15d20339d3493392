#include "dph/node.hpp"

#include <algorithm>
#include <cassert>

namespace dph {

work_set memory_provider::load_dimension(dim_t d) {
  work_set out;
  for (index_t j = lo_ + 1; j <= hi_; ++j) {
    if (matrix_->dims[static_cast<std::size_t>(j - 1)] != d) continue;
    out.push_back({j, d, matrix_->columns[static_cast<std::size_t>(j - 1)]});
  }
  return out;
}

namespace {

// Drops the columns listed in `clear` (sorted) from `work`, recording them.
void apply_clearing(work_set& work, const std::vector<index_t>& clear,
                    std::vector<index_t>& cleared_out) {
  if (clear.empty()) return;
  work_set kept;
  kept.reserve(work.size());
  for (work_column& wc : work) {
    if (std::binary_search(clear.begin(), clear.end(), wc.index))
      cleared_out.push_back(wc.index);
    else
      kept.push_back(std::move(wc));
  }
  work.swap(kept);
}

}  // namespace

node_output run_node(const node_config& cfg, column_provider& provider,
                     node_transport& transport) {
  const int i = cfg.id;
  const int p = cfg.partition.count();
  runtime_observer* obs = cfg.observer;

  node_output out;
  out.id = i;
  out.store = pivot_store(cfg.partition.lower(i), cfg.partition.upper(i));

  column scratch;
  std::vector<index_t> clear_next;   // pivots found in the dimension above

  auto observe_resident = [&](std::size_t work_count) {
    out.metrics.observe_resident(out.store.size() + work_count);
  };

  for (dim_t d = provider.max_dimension(); d >= 1; --d) {
    work_set work = provider.load_dimension(d);
    std::sort(clear_next.begin(), clear_next.end());
    std::size_t cleared_before = out.cleared.size();
    apply_clearing(work, clear_next, out.cleared);
    if (obs) {
      obs->on_columns_cleared(i, std::span<const index_t>(out.cleared).subspan(cleared_before));
      obs->on_columns_loaded(i, d, work);
    }
    observe_resident(work.size());

    for (int j = i; j <= p; ++j) {
      if (obs) obs->on_block_begin(i, {i, j}, d);
      std::size_t zeroed_before = out.zeroed.size();
      std::size_t fresh_before = out.store.fresh_count();
      work_set residual = reduce_block(out.store, std::move(work), out.zeroed, scratch);
      work.clear();
      if (obs) {
        for (std::size_t f = fresh_before; f < out.store.fresh_count(); ++f) {
          index_t piv = out.store.fresh_at(f);
          obs->on_column_stored(i, piv, out.store.at(piv).index);
        }
        for (std::size_t z = zeroed_before; z < out.zeroed.size(); ++z)
          obs->on_column_zeroed(i, out.zeroed[z]);
        obs->on_block_end(i, {i, j}, d);
      }
      observe_resident(residual.size());

      if (i > 1) {
        package pkg = make_package(j, std::move(residual));
        out.metrics.record_send(i - 1, pkg.byte_size);
        if (obs) obs->on_package_sent(i, i - 1, pkg, d);
        transport.send_to_prev(std::move(pkg));
      } else if (!residual.empty()) {
        // Nothing lies below range 1; node 1 retains everything it reduces.
        throw std::logic_error("node 1 produced a non-empty residual");
      }

      if (j < p) {
        package pkg = transport.receive_from_next();
        if (pkg.column_range != j + 1)
          throw protocol_error("node " + std::to_string(i) + " expected a package for range " +
                               std::to_string(j + 1) + ", got range " +
                               std::to_string(pkg.column_range));
        for (const work_column& wc : pkg.columns)
          if (wc.dim != d)
            throw protocol_error("package column " + std::to_string(wc.index) +
                                 " has dimension " + std::to_string(wc.dim) +
                                 " while processing dimension " + std::to_string(d));
        if (obs) obs->on_package_received(i, i + 1, pkg, d);
        work = std::move(pkg.columns);
        observe_resident(work.size());
      }
    }

    clear_next = out.store.take_fresh_pivots();
    if (obs) obs->on_dimension_done(i, d);
    if (cfg.dimension_fence) cfg.dimension_fence(d);
  }
  return out;
}

node_result summarize(const node_output& out, std::span<const dim_t> dims) {
  node_result res;
  res.id = out.id;
  out.store.for_each([&](index_t piv, const work_column& wc) {
    res.pairs.push_back({piv, wc.index, dims[static_cast<std::size_t>(piv - 1)]});
  });
  sort_canonical(res.pairs);
  res.zeroed = out.zeroed;
  res.cleared = out.cleared;
  res.metrics = out.metrics;
  return res;
}

gathered_result gather_results(const range_partition& partition,
                               std::span<const node_result> results,
                               std::span<const dim_t> dims) {
  const index_t n = partition.n();
  // 0 = unclassified, 'b' birth (pivot), 'd' death, 'z' zero-report, 'c' cleared
  std::vector<char> mark(static_cast<std::size_t>(n) + 1, 0);

  auto classify = [&](index_t k, char as, const char* what) {
    if (k < 1 || k > n)
      throw consistency_error(std::string(what) + " index " + std::to_string(k) +
                              " outside [1, n]");
    char& m = mark[static_cast<std::size_t>(k)];
    if (as == 'b' && m == 'z')
      throw consistency_error("index " + std::to_string(k) +
                              " classified as both pivot and zero without a clearing record");
    if (m != 0)
      throw consistency_error("index " + std::to_string(k) + " classified twice (" + m +
                              " then " + as + ")");
    m = as;
  };

  gathered_result out;
  for (const node_result& nr : results) {
    for (const persistence_pair& pr : nr.pairs) {
      if (!partition.in_range(pr.birth, nr.id))
        throw consistency_error("node " + std::to_string(nr.id) + " reports pivot " +
                                std::to_string(pr.birth) + " outside its range");
      if (pr.birth >= pr.death)
        throw consistency_error("pair (" + std::to_string(pr.birth) + ", " +
                                std::to_string(pr.death) + ") not increasing");
      classify(pr.death, 'd', "death");
    }
    for (index_t z : nr.zeroed) classify(z, 'z', "zero-report");
    for (index_t c : nr.cleared) classify(c, 'c', "cleared");
  }
  // Births second so a duplicate pivot reports as such, and so zero/birth
  // conflicts surface with the dedicated message.
  for (const node_result& nr : results) {
    for (const persistence_pair& pr : nr.pairs) {
      char& m = mark[static_cast<std::size_t>(pr.birth)];
      if (m == 'b')
        throw consistency_error("duplicate pivot " + std::to_string(pr.birth) +
                                " across nodes");
      if (m == 'd')
        throw consistency_error("index " + std::to_string(pr.birth) +
                                " classified as both death and pivot");
      if (m == 'z')
        throw consistency_error("index " + std::to_string(pr.birth) +
                                " classified as both pivot and zero without a clearing record");
      m = 'b';   // cleared pivots ('c') are expected: the clearing record
      out.pairs.push_back(pr);
    }
  }
  for (index_t k = 1; k <= n; ++k) {
    char m = mark[static_cast<std::size_t>(k)];
    if (m == 'c')
      throw consistency_error("index " + std::to_string(k) +
                              " carries a clearing record but no node reports it as a pivot");
    if (m == 0 || m == 'z') out.essentials.push_back({k, dims[static_cast<std::size_t>(k - 1)]});
  }

  sort_canonical(out.pairs);
  sort_canonical(out.essentials);
  if (2 * static_cast<index_t>(out.pairs.size()) + static_cast<index_t>(out.essentials.size()) !=
      n)
    throw consistency_error("conservation violated: 2*pairs + essentials != n");
  return out;
}

}  // namespace dph
