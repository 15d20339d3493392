#include <doctest.h>

#include <random>

#include "dph/reduce.hpp"
#include "support/generators.hpp"

using namespace dph;

namespace {

const std::vector<persistence_pair> triangle_pairs{
    {2, 4, 0}, {3, 5, 0}, {6, 7, 1}};

// A reduced matrix has pairwise distinct pivots among non-zero columns.
void check_reduced(const boundary_matrix& m) {
  std::vector<bool> seen(static_cast<std::size_t>(m.size()) + 1, false);
  for (const column& c : m.columns) {
    index_t p = pivot(c);
    if (p == 0) continue;
    CHECK(!seen[static_cast<std::size_t>(p)]);
    seen[static_cast<std::size_t>(p)] = true;
  }
}

}  // namespace

TEST_SUITE_BEGIN("reduce");

TEST_CASE("standard_reduce on the triangle") {
  reduction_result res = standard_reduce(testing::triangle_matrix());
  CHECK(res.pairs == triangle_pairs);
  CHECK(res.essentials == std::vector<essential_class>{{1, 0}});
  check_reduced(res.reduced);
  CHECK(!validate(res.reduced).has_value());
  // Cross-check the hand-derived pair set with the independent oracle.
  CHECK(testing::naive_pair_oracle(testing::triangle_matrix()) == triangle_pairs);
}

TEST_CASE("standard_reduce on vertices only") {
  boundary_matrix m;
  m.dims = {0, 0, 0};
  m.columns = {{}, {}, {}};
  reduction_result res = standard_reduce(m);
  CHECK(res.pairs.empty());
  CHECK(res.essentials == std::vector<essential_class>{{1, 0}, {2, 0}, {3, 0}});
}

TEST_CASE("standard_reduce on a single edge") {
  boundary_matrix m;
  m.dims = {0, 0, 1};
  m.columns = {{}, {}, {1, 2}};
  reduction_result res = standard_reduce(m);
  CHECK(res.pairs == std::vector<persistence_pair>{{2, 3, 0}});
  CHECK(res.essentials == std::vector<essential_class>{{1, 0}});
}

TEST_CASE("twist_reduce matches standard_reduce on the worked instances") {
  for (const boundary_matrix& m :
       {testing::triangle_matrix(), testing::hollow_triangle_matrix()}) {
    reduction_result a = standard_reduce(m);
    reduction_result b = twist_reduce(m);
    CHECK(a.pairs == b.pairs);
    CHECK(a.essentials == b.essentials);
    check_reduced(b.reduced);
  }
  // On the triangle, clearing zeroes column 6 (the pivot of column 7).
  reduction_result t = twist_reduce(testing::triangle_matrix());
  CHECK(t.reduced.columns[5].empty());
}

TEST_CASE("twist_reduce is vacuous without higher cells") {
  boundary_matrix m;
  m.dims = {0, 0};
  m.columns = {{}, {}};
  reduction_result a = standard_reduce(m);
  reduction_result b = twist_reduce(m);
  CHECK(a.pairs == b.pairs);
  CHECK(a.essentials == b.essentials);
}

TEST_CASE("pair-set invariance and conservation on random filtered complexes") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 40; ++trial) {
    boundary_matrix m = testing::random_complex(rng, trial < 20 ? 50 : 200);
    REQUIRE(!validate(m).has_value());
    reduction_result a = standard_reduce(m);
    reduction_result b = twist_reduce(m);
    CHECK(a.pairs == b.pairs);
    CHECK(a.essentials == b.essentials);
    check_reduced(a.reduced);
    check_reduced(b.reduced);
    CHECK(2 * static_cast<index_t>(a.pairs.size()) +
              static_cast<index_t>(a.essentials.size()) ==
          m.size());
    if (m.size() <= 120) CHECK(a.pairs == testing::naive_pair_oracle(m));
  }
}

TEST_CASE("betti numbers from essential classes") {
  reduction_result triangle = standard_reduce(testing::triangle_matrix());
  CHECK(betti_numbers(triangle, 2) == std::vector<std::int64_t>{1, 0, 0});

  reduction_result hollow = standard_reduce(testing::hollow_triangle_matrix());
  CHECK(betti_numbers(hollow, 1) == std::vector<std::int64_t>{1, 1});

  reduction_result empty = standard_reduce(boundary_matrix{});
  CHECK(betti_numbers(empty, 2) == std::vector<std::int64_t>{0, 0, 0});
}

TEST_SUITE_END();
