#include <doctest.h>

#include <random>

#include "dph/block.hpp"
#include "dph/reduce.hpp"
#include "support/generators.hpp"

using namespace dph;

namespace {

work_set columns_of(const boundary_matrix& m, index_t lo, index_t hi) {
  work_set out;
  for (index_t j = lo + 1; j <= hi; ++j)
    out.push_back({j, m.dims[static_cast<std::size_t>(j - 1)],
                   m.columns[static_cast<std::size_t>(j - 1)]});
  return out;
}

}  // namespace

TEST_SUITE_BEGIN("block");

TEST_CASE("diagonal block (2,2) of the triangle") {
  boundary_matrix m = testing::triangle_matrix();
  pivot_store store(4, 7);
  std::vector<index_t> zeroed;
  column scratch;
  work_set residual = reduce_block(store, columns_of(m, 4, 7), zeroed, scratch);

  CHECK(store.size() == 1);
  REQUIRE(store.contains(6));
  CHECK(store.at(6).index == 7);   // the 2-cell parks at pivot 6
  REQUIRE(residual.size() == 2);
  CHECK(residual[0].index == 5);
  CHECK(residual[1].index == 6);
  CHECK(zeroed.empty());
}

TEST_CASE("block (1,2) of the triangle finishes the reduction") {
  boundary_matrix m = testing::triangle_matrix();
  pivot_store store(0, 4);
  std::vector<index_t> zeroed;
  column scratch;
  // Block (1,1) first: column 4 = {1,2} parks at pivot 2.
  work_set r1 = reduce_block(store, columns_of(m, 0, 4), zeroed, scratch);
  CHECK(r1.empty());
  REQUIRE(store.contains(2));
  CHECK(store.at(2).index == 4);

  // Then the residual {5, 6} from node 2.
  work_set work;
  work.push_back({5, 1, m.columns[4]});
  work.push_back({6, 1, m.columns[5]});
  work_set r2 = reduce_block(store, std::move(work), zeroed, scratch);
  CHECK(r2.empty());
  REQUIRE(store.contains(3));
  CHECK(store.at(3).index == 5);
  CHECK(zeroed == std::vector<index_t>{6});   // gains columns 5 then 4, becomes zero

  // The union of stores reproduces the oracle's pairs.
  std::vector<persistence_pair> pairs;
  store.for_each([&](index_t piv, const work_column& wc) {
    pairs.push_back({piv, wc.index, m.dims[static_cast<std::size_t>(piv - 1)]});
  });
  pairs.push_back({6, 7, 1});   // from node 2's store above
  sort_canonical(pairs);
  CHECK(pairs == standard_reduce(m).pairs);
}

TEST_CASE("empty work set leaves the store untouched") {
  pivot_store store(4, 7);
  std::vector<index_t> zeroed;
  column scratch;
  work_set residual = reduce_block(store, {}, zeroed, scratch);
  CHECK(residual.empty());
  CHECK(store.size() == 0);
  CHECK(zeroed.empty());
}

TEST_CASE("store rejects a second column with the same pivot") {
  pivot_store store(0, 10);
  store.insert(3, {5, 1, {1, 3}});
  CHECK_THROWS_AS(store.insert(3, {7, 1, {2, 3}}), std::logic_error);
}

TEST_CASE("a single block over the whole matrix reproduces standard_reduce") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 25; ++trial) {
    boundary_matrix m = testing::random_complex(rng, 150);
    pivot_store store(0, m.size());
    std::vector<index_t> zeroed;
    column scratch;
    work_set residual = reduce_block(store, columns_of(m, 0, m.size()), zeroed, scratch);
    CHECK(residual.empty());

    std::vector<persistence_pair> pairs;
    store.for_each([&](index_t piv, const work_column& wc) {
      pairs.push_back({piv, wc.index, m.dims[static_cast<std::size_t>(piv - 1)]});
    });
    sort_canonical(pairs);
    CHECK(pairs == standard_reduce(m).pairs);
  }
}

TEST_CASE("residual columns never keep a pivot inside the block's row range") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 25; ++trial) {
    boundary_matrix m = testing::random_complex(rng, 120);
    if (m.size() < 4) continue;
    index_t lo = m.size() / 3, hi = 2 * m.size() / 3;
    if (lo >= hi) continue;
    // Diagonal-style slice: work columns inside (lo, hi] only, which makes the
    // block reducible by construction.
    pivot_store store(lo, hi);
    std::vector<index_t> zeroed;
    column scratch;
    work_set residual = reduce_block(store, columns_of(m, lo, hi), zeroed, scratch);
    for (const work_column& wc : residual) {
      index_t p = pivot(wc.rows);
      CHECK(p != 0);
      CHECK(p <= lo);   // never in (lo, hi]
    }
    // No two survivors share a pivot above lo.
    std::vector<index_t> pivots;
    store.for_each([&](index_t piv, const work_column&) { pivots.push_back(piv); });
    for (const work_column& wc : residual)
      for (index_t piv : pivots) CHECK(pivot(wc.rows) != piv);
  }
}

TEST_SUITE_END();
