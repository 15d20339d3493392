#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace dph {

// 3D grayscale image, x fastest: values[x + nx*(y + ny*z)].
struct image3d {
  std::array<std::int64_t, 3> extents{0, 0, 0};
  std::vector<double> values;

  std::int64_t nx() const { return extents[0]; }
  std::int64_t ny() const { return extents[1]; }
  std::int64_t nz() const { return extents[2]; }
  std::int64_t voxel_count() const { return nx() * ny() * nz(); }
  double at(std::int64_t x, std::int64_t y, std::int64_t z) const {
    return values[static_cast<std::size_t>(x + nx() * (y + ny() * z))];
  }
};

// Isotropic random field from a fixed-size sum of random-phase cosine modes
// with amplitude ||k||^(-exponent/2). Deterministic for fixed arguments,
// including across SIMD/scalar kernel paths. exponent 0 gives a white-noise-
// like field; larger exponents concentrate power at low frequencies.
image3d generate_image(std::array<std::int64_t, 3> extents, std::uint64_t seed,
                       double exponent);

// Voxels strictly below every existing 6-neighborhood value.
std::uint64_t local_minima_count(const image3d& img);

// Raw voxel format: extents as u64 x3, then values as little-endian f64.
void write_image(const image3d& img, const std::string& path);
image3d read_image(const std::string& path);

}  // namespace dph
