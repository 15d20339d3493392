#include "dph/image.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "dph/kernels.hpp"
#include "wire.hpp"

namespace dph {

namespace {

constexpr int mode_count = 256;
constexpr double two_pi = 6.283185307179586476925286766559;

// [0, 1) from the top 53 bits; distribution classes are implementation-defined,
// this is not.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct cosine_mode {
  double kx, ky, kz;
  double amplitude;
  double phase;
};

}  // namespace

image3d generate_image(std::array<std::int64_t, 3> extents, std::uint64_t seed,
                       double exponent) {
  for (std::int64_t e : extents)
    if (e < 1) throw std::invalid_argument("generate_image: extents must be at least 1");

  std::mt19937_64 rng(seed);
  std::vector<cosine_mode> modes(mode_count);
  double power = 0.0;
  for (cosine_mode& m : modes) {
    double norm;
    do {
      m.kx = (2.0 * uniform01(rng) - 1.0) * 3.141592653589793;
      m.ky = (2.0 * uniform01(rng) - 1.0) * 3.141592653589793;
      m.kz = (2.0 * uniform01(rng) - 1.0) * 3.141592653589793;
      norm = std::sqrt(m.kx * m.kx + m.ky * m.ky + m.kz * m.kz);
    } while (norm < 0.15);   // keep power-law amplitudes bounded
    m.amplitude = std::pow(norm, -exponent / 2.0);
    m.phase = two_pi * uniform01(rng);
    power += m.amplitude * m.amplitude;
  }
  const double scale = 1.0 / std::sqrt(0.5 * power);   // unit field variance
  for (cosine_mode& m : modes) m.amplitude *= scale;

  image3d img;
  img.extents = extents;
  img.values.assign(static_cast<std::size_t>(img.voxel_count()), 0.0);

  const auto& k = kernels::active();
  const std::int64_t nx = img.nx();
  for (std::int64_t z = 0; z < img.nz(); ++z) {
    for (std::int64_t y = 0; y < img.ny(); ++y) {
      double* row = img.values.data() + static_cast<std::size_t>(nx * (y + img.ny() * z));
      for (const cosine_mode& m : modes) {
        double phase0 = std::remainder(
            m.phase + m.ky * static_cast<double>(y) + m.kz * static_cast<double>(z), two_pi);
        k.cos_accumulate(row, static_cast<std::size_t>(nx), m.amplitude, phase0, m.kx);
      }
    }
  }
  return img;
}

namespace {

// Bounds-checked strict 6-neighborhood minimum, used for shell voxels and
// degenerate extents.
bool is_strict_min(const image3d& img, std::int64_t x, std::int64_t y, std::int64_t z) {
  double v = img.at(x, y, z);
  if (x > 0 && v >= img.at(x - 1, y, z)) return false;
  if (x + 1 < img.nx() && v >= img.at(x + 1, y, z)) return false;
  if (y > 0 && v >= img.at(x, y - 1, z)) return false;
  if (y + 1 < img.ny() && v >= img.at(x, y + 1, z)) return false;
  if (z > 0 && v >= img.at(x, y, z - 1)) return false;
  if (z + 1 < img.nz() && v >= img.at(x, y, z + 1)) return false;
  return true;
}

}  // namespace

std::uint64_t local_minima_count(const image3d& img) {
  const std::int64_t nx = img.nx(), ny = img.ny(), nz = img.nz();
  std::uint64_t count = 0;

  if (nx < 3 || ny < 3 || nz < 3) {
    for (std::int64_t z = 0; z < nz; ++z)
      for (std::int64_t y = 0; y < ny; ++y)
        for (std::int64_t x = 0; x < nx; ++x)
          if (is_strict_min(img, x, y, z)) ++count;
    return count;
  }

  const auto& k = kernels::active();
  auto row = [&](std::int64_t y, std::int64_t z) {
    return img.values.data() + static_cast<std::size_t>(nx * (y + ny * z));
  };
  for (std::int64_t z = 1; z + 1 < nz; ++z)
    for (std::int64_t y = 1; y + 1 < ny; ++y)
      count += k.row_minima(row(y, z), row(y - 1, z), row(y + 1, z), row(y, z - 1),
                            row(y, z + 1), static_cast<std::size_t>(nx));
  // shell: any coordinate on the boundary
  for (std::int64_t z = 0; z < nz; ++z)
    for (std::int64_t y = 0; y < ny; ++y)
      for (std::int64_t x = 0; x < nx; ++x) {
        bool shell = x == 0 || x == nx - 1 || y == 0 || y == ny - 1 || z == 0 || z == nz - 1;
        if (shell && is_strict_min(img, x, y, z)) ++count;
      }
  return count;
}

void write_image(const image3d& img, const std::string& path) {
  std::vector<std::byte> out;
  out.reserve(24 + img.values.size() * 8);
  for (std::int64_t e : img.extents) wire::put_u64(out, static_cast<std::uint64_t>(e));
  for (double v : img.values) wire::put_f64(out, v);
  wire::write_file(path, out);
}

image3d read_image(const std::string& path) {
  std::vector<std::byte> bytes = wire::read_file(path);
  wire::reader r{bytes};
  image3d img;
  for (int a = 0; a < 3; ++a) {
    std::uint64_t e = r.u64("extent");
    if (e == 0 || e > (std::uint64_t(1) << 20)) r.fail("extent out of bounds");
    img.extents[static_cast<std::size_t>(a)] = static_cast<std::int64_t>(e);
  }
  auto voxels = static_cast<unsigned __int128>(img.extents[0]) *
                static_cast<unsigned __int128>(img.extents[1]) *
                static_cast<unsigned __int128>(img.extents[2]);
  if (voxels > (bytes.size() - 24) / 8) r.fail("truncated voxel data");
  img.values.reserve(static_cast<std::size_t>(voxels));
  for (unsigned __int128 i = 0; i < voxels; ++i) {
    double v = r.f64("voxel");
    if (!std::isfinite(v)) r.fail("non-finite voxel value");
    img.values.push_back(v);
  }
  r.finish();
  return img;
}

}  // namespace dph
