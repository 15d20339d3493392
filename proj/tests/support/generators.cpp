#include "generators.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace dph::testing {

boundary_matrix triangle_matrix() {
  boundary_matrix m;
  m.dims = {0, 0, 0, 1, 1, 1, 2};
  m.columns = {{}, {}, {}, {1, 2}, {1, 3}, {2, 3}, {4, 5, 6}};
  return m;
}

boundary_matrix hollow_triangle_matrix() {
  boundary_matrix m = triangle_matrix();
  m.dims.pop_back();
  m.columns.pop_back();
  return m;
}

namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

boundary_matrix random_complex(std::mt19937_64& rng, std::size_t max_cells) {
  const int v = 3 + static_cast<int>(rng() % 10);
  using simplex = std::vector<int>;
  std::vector<simplex> cells;
  std::map<simplex, std::size_t> id_of;
  auto have = [&](const simplex& s) { return id_of.contains(s); };
  auto push = [&](const simplex& s) {
    id_of[s] = cells.size();
    cells.push_back(s);
  };

  for (int a = 0; a < v; ++a) push({a});

  std::vector<simplex> candidates;
  for (int a = 0; a < v; ++a)
    for (int b = a + 1; b < v; ++b) candidates.push_back({a, b});
  std::shuffle(candidates.begin(), candidates.end(), rng);
  for (const simplex& s : candidates)
    if (cells.size() < max_cells && rng() % 100 < 60) push(s);

  candidates.clear();
  for (int a = 0; a < v; ++a)
    for (int b = a + 1; b < v; ++b)
      for (int c = b + 1; c < v; ++c)
        if (have({a, b}) && have({a, c}) && have({b, c})) candidates.push_back({a, b, c});
  std::shuffle(candidates.begin(), candidates.end(), rng);
  for (const simplex& s : candidates)
    if (cells.size() < max_cells && rng() % 100 < 55) push(s);

  candidates.clear();
  for (int a = 0; a < v; ++a)
    for (int b = a + 1; b < v; ++b)
      for (int c = b + 1; c < v; ++c)
        for (int d = c + 1; d < v; ++d)
          if (have({a, b, c}) && have({a, b, d}) && have({a, c, d}) && have({b, c, d}))
            candidates.push_back({a, b, c, d});
  std::shuffle(candidates.begin(), candidates.end(), rng);
  for (const simplex& s : candidates)
    if (cells.size() < max_cells && rng() % 100 < 50) push(s);

  // Filtration values: strictly above every face, so sorting by value alone
  // puts faces first (values are almost surely distinct).
  std::vector<double> value(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    double base = 0.0;
    const simplex& s = cells[c];
    if (s.size() > 1) {
      for (std::size_t skip = 0; skip < s.size(); ++skip) {
        simplex face;
        for (std::size_t t = 0; t < s.size(); ++t)
          if (t != skip) face.push_back(s[t]);
        base = std::max(base, value[id_of.at(face)]);
      }
    }
    value[c] = base + 0.001 + uniform01(rng);
  }

  std::vector<std::size_t> order(cells.size());
  std::iota(order.begin(), order.end(), std::size_t(0));
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return value[a] < value[b]; });
  std::vector<index_t> rank(cells.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos)
    rank[order[pos]] = static_cast<index_t>(pos) + 1;

  boundary_matrix m;
  m.dims.resize(cells.size());
  m.columns.resize(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const simplex& s = cells[c];
    index_t j = rank[c];
    m.dims[static_cast<std::size_t>(j - 1)] = static_cast<dim_t>(s.size() - 1);
    column& col = m.columns[static_cast<std::size_t>(j - 1)];
    if (s.size() > 1) {
      for (std::size_t skip = 0; skip < s.size(); ++skip) {
        simplex face;
        for (std::size_t t = 0; t < s.size(); ++t)
          if (t != skip) face.push_back(s[t]);
        col.push_back(rank[id_of.at(face)]);
      }
      std::sort(col.begin(), col.end());
    }
  }
  return m;
}

boundary_matrix random_valid_matrix(std::mt19937_64& rng, index_t max_cells) {
  const index_t n = 1 + static_cast<index_t>(rng() % static_cast<std::uint64_t>(max_cells));
  boundary_matrix m;
  m.dims.resize(static_cast<std::size_t>(n));
  m.columns.resize(static_cast<std::size_t>(n));
  for (index_t j = 1; j <= n; ++j)
    m.dims[static_cast<std::size_t>(j - 1)] = static_cast<dim_t>(rng() % 4);
  for (index_t j = 1; j <= n; ++j) {
    dim_t d = m.dims[static_cast<std::size_t>(j - 1)];
    if (d == 0) continue;
    column& col = m.columns[static_cast<std::size_t>(j - 1)];
    for (index_t i = 1; i < j; ++i)
      if (m.dims[static_cast<std::size_t>(i - 1)] == d - 1 && rng() % 4 == 0)
        col.push_back(i);
  }
  return m;
}

image3d random_image(std::mt19937_64& rng, std::int64_t max_extent) {
  image3d img;
  for (int a = 0; a < 3; ++a)
    img.extents[static_cast<std::size_t>(a)] =
        2 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(max_extent - 1));
  img.values.resize(static_cast<std::size_t>(img.voxel_count()));
  for (double& v : img.values) v = uniform01(rng);
  return img;
}

std::vector<persistence_pair> naive_pair_oracle(boundary_matrix m) {
  const index_t n = m.size();
  while (true) {
    // Smallest column per pivot, then the rightmost colliding target.
    std::map<index_t, index_t> owner;
    for (index_t j = 1; j <= n; ++j) {
      index_t p = pivot(m.columns[static_cast<std::size_t>(j - 1)]);
      if (p == 0) continue;
      auto [it, fresh] = owner.try_emplace(p, j);
      if (!fresh && j < it->second) it->second = j;
    }
    index_t target = 0, source = 0;
    for (index_t j = n; j >= 1; --j) {
      index_t p = pivot(m.columns[static_cast<std::size_t>(j - 1)]);
      if (p != 0 && owner.at(p) < j) {
        target = j;
        source = owner.at(p);
        break;
      }
    }
    if (target == 0) break;
    m.columns[static_cast<std::size_t>(target - 1)] =
        add(m.columns[static_cast<std::size_t>(target - 1)],
            m.columns[static_cast<std::size_t>(source - 1)]);
  }
  std::vector<persistence_pair> pairs;
  for (index_t j = 1; j <= n; ++j) {
    index_t p = pivot(m.columns[static_cast<std::size_t>(j - 1)]);
    if (p != 0) pairs.push_back({p, j, m.dims[static_cast<std::size_t>(p - 1)]});
  }
  sort_canonical(pairs);
  return pairs;
}

std::vector<essential_class> essentials_from_pairs(index_t n, const std::vector<dim_t>& dims,
                                                   const std::vector<persistence_pair>& pairs) {
  std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
  for (const persistence_pair& p : pairs) {
    used[static_cast<std::size_t>(p.birth)] = true;
    used[static_cast<std::size_t>(p.death)] = true;
  }
  std::vector<essential_class> out;
  for (index_t k = 1; k <= n; ++k)
    if (!used[static_cast<std::size_t>(k)]) out.push_back({k, dims[static_cast<std::size_t>(k - 1)]});
  sort_canonical(out);
  return out;
}

}  // namespace dph::testing
