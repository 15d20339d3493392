#include "dph/cubical.hpp"

#include <algorithm>
#include <cstring>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "dph/kernels.hpp"

namespace dph {

index_t cubical_cell_count(std::array<std::int64_t, 3> extents) {
  unsigned __int128 n = 1;
  for (std::int64_t e : extents) {
    if (e < 1) throw std::invalid_argument("cubical_cell_count: extents must be at least 1");
    n *= static_cast<unsigned __int128>(2 * e - 1);
  }
  if (n > static_cast<unsigned __int128>(std::numeric_limits<index_t>::max()))
    throw std::overflow_error("cubical cell count exceeds the index width");
  return static_cast<index_t>(n);
}

cubical_filtration build_cubical(const image3d& img) {
  const std::int64_t nx = img.nx(), ny = img.ny(), nz = img.nz();
  const index_t total = cubical_cell_count(img.extents);
  const std::int64_t ex = 2 * nx - 1, ey = 2 * ny - 1, ez = 2 * nz - 1;
  const auto& k = kernels::active();

  // Lower-star values on the extended grid, one axis sweep at a time: even
  // coordinates copy, odd coordinates take the max of the two adjacent layers.
  std::vector<double> pass_x(static_cast<std::size_t>(ex * ny * nz));
  for (std::int64_t z = 0; z < nz; ++z)
    for (std::int64_t y = 0; y < ny; ++y) {
      const double* src = img.values.data() + static_cast<std::size_t>(nx * (y + ny * z));
      double* dst = pass_x.data() + static_cast<std::size_t>(ex * (y + ny * z));
      for (std::int64_t x = 0; x + 1 < nx; ++x) {
        dst[2 * x] = src[x];
        dst[2 * x + 1] = src[x] > src[x + 1] ? src[x] : src[x + 1];
      }
      dst[2 * (nx - 1)] = src[nx - 1];
    }

  std::vector<double> pass_y(static_cast<std::size_t>(ex * ey * nz));
  for (std::int64_t z = 0; z < nz; ++z)
    for (std::int64_t y = 0; y < ey; ++y) {
      const double* a = pass_x.data() + static_cast<std::size_t>(ex * (y / 2 + ny * z));
      double* dst = pass_y.data() + static_cast<std::size_t>(ex * (y + ey * z));
      if (y % 2 == 0) {
        std::memcpy(dst, a, static_cast<std::size_t>(ex) * sizeof(double));
      } else {
        const double* b = a + ex;
        k.elementwise_max(a, b, dst, static_cast<std::size_t>(ex));
      }
    }
  pass_x.clear();
  pass_x.shrink_to_fit();

  std::vector<double> ext(static_cast<std::size_t>(total));
  const std::size_t plane = static_cast<std::size_t>(ex * ey);
  for (std::int64_t z = 0; z < ez; ++z) {
    const double* a = pass_y.data() + plane * static_cast<std::size_t>(z / 2);
    double* dst = ext.data() + plane * static_cast<std::size_t>(z);
    if (z % 2 == 0)
      std::memcpy(dst, a, plane * sizeof(double));
    else
      k.elementwise_max(a, a + plane, dst, plane);
  }
  pass_y.clear();
  pass_y.shrink_to_fit();

  // Cell dimension = number of odd coordinates.
  std::vector<std::uint8_t> cell_dim(static_cast<std::size_t>(total));
  {
    std::size_t c = 0;
    for (std::int64_t z = 0; z < ez; ++z)
      for (std::int64_t y = 0; y < ey; ++y)
        for (std::int64_t x = 0; x < ex; ++x, ++c)
          cell_dim[c] = static_cast<std::uint8_t>((x & 1) + (y & 1) + (z & 1));
  }

  // Filtration order: value, then dimension (faces precede cofaces inside a
  // level), then the linearized coordinate for determinism.
  std::vector<index_t> order(static_cast<std::size_t>(total));
  std::iota(order.begin(), order.end(), index_t(0));
  std::sort(order.begin(), order.end(), [&](index_t a, index_t b) {
    double va = ext[static_cast<std::size_t>(a)], vb = ext[static_cast<std::size_t>(b)];
    if (va != vb) return va < vb;
    auto da = cell_dim[static_cast<std::size_t>(a)], db = cell_dim[static_cast<std::size_t>(b)];
    if (da != db) return da < db;
    return a < b;
  });

  std::vector<index_t> rank(static_cast<std::size_t>(total));
  for (index_t pos = 0; pos < total; ++pos)
    rank[static_cast<std::size_t>(order[static_cast<std::size_t>(pos)])] = pos + 1;

  cubical_filtration out;
  out.matrix.dims.resize(static_cast<std::size_t>(total));
  out.matrix.columns.resize(static_cast<std::size_t>(total));
  out.values.resize(static_cast<std::size_t>(total));

  const index_t stride_x = 1, stride_y = ex, stride_z = ex * ey;
  for (index_t pos = 0; pos < total; ++pos) {
    const index_t c = order[static_cast<std::size_t>(pos)];
    const std::int64_t x = c % ex, y = (c / ex) % ey, z = c / (ex * ey);
    out.matrix.dims[static_cast<std::size_t>(pos)] =
        static_cast<dim_t>(cell_dim[static_cast<std::size_t>(c)]);
    out.values[static_cast<std::size_t>(pos)] = ext[static_cast<std::size_t>(c)];
    column& col = out.matrix.columns[static_cast<std::size_t>(pos)];
    if (x & 1) {
      col.push_back(rank[static_cast<std::size_t>(c - stride_x)]);
      col.push_back(rank[static_cast<std::size_t>(c + stride_x)]);
    }
    if (y & 1) {
      col.push_back(rank[static_cast<std::size_t>(c - stride_y)]);
      col.push_back(rank[static_cast<std::size_t>(c + stride_y)]);
    }
    if (z & 1) {
      col.push_back(rank[static_cast<std::size_t>(c - stride_z)]);
      col.push_back(rank[static_cast<std::size_t>(c + stride_z)]);
    }
    std::sort(col.begin(), col.end());
  }
  return out;
}

void truncate_to_max_dim(cubical_filtration& f, dim_t cap) {
  if (cap < 0) throw std::invalid_argument("truncate_to_max_dim: cap must be non-negative");
  const index_t n = f.matrix.size();
  std::vector<index_t> remap(static_cast<std::size_t>(n) + 1, 0);
  index_t kept = 0;
  for (index_t j = 1; j <= n; ++j)
    if (f.matrix.dims[static_cast<std::size_t>(j - 1)] <= cap)
      remap[static_cast<std::size_t>(j)] = ++kept;

  boundary_matrix m;
  std::vector<double> values;
  m.dims.reserve(static_cast<std::size_t>(kept));
  m.columns.reserve(static_cast<std::size_t>(kept));
  values.reserve(static_cast<std::size_t>(kept));
  for (index_t j = 1; j <= n; ++j) {
    if (remap[static_cast<std::size_t>(j)] == 0) continue;
    column col = std::move(f.matrix.columns[static_cast<std::size_t>(j - 1)]);
    for (index_t& r : col) r = remap[static_cast<std::size_t>(r)];   // faces are always kept
    m.columns.push_back(std::move(col));
    m.dims.push_back(f.matrix.dims[static_cast<std::size_t>(j - 1)]);
    values.push_back(f.values[static_cast<std::size_t>(j - 1)]);
  }
  f.matrix = std::move(m);
  f.values = std::move(values);
}

}  // namespace dph
