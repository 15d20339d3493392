#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dph/block.hpp"

namespace dph {

// A batch of unreduced columns of one column range, in transit between nodes.
struct package {
  int column_range = 0;    // range index j the columns belong to
  work_set columns;        // ascending by global index
  std::uint64_t byte_size = 0;   // DPKG-encoded size, maintained by make_package/decode
};

inline constexpr std::uint16_t wire_version = 1;

// DPKG frame: magic "DPKG", version u16, range u64, column count u64, then per
// column: global index u64, dim u16, row count u64, row indices u64 each.
// All fields little-endian. An empty package is 22 bytes.
std::uint64_t encoded_package_size(const package& pkg);
std::vector<std::byte> encode_package(const package& pkg);

struct decode_error : std::runtime_error {
  decode_error(std::size_t at, const std::string& what)
      : std::runtime_error("decode error at offset " + std::to_string(at) + ": " + what),
        offset(at) {}
  std::size_t offset;
};

// Rejects bad magic/version, truncation, trailing bytes, and column entries
// that are not strictly ascending.
package decode_package(std::span<const std::byte> bytes);

package make_package(int column_range, work_set columns);

}  // namespace dph
