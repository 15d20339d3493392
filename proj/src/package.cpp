#include "dph/package.hpp"

#include <limits>

#include "wire.hpp"

namespace dph {

std::uint64_t encoded_package_size(const package& pkg) {
  std::uint64_t size = 4 + 2 + 8 + 8;   // magic, version, range, column count
  for (const work_column& wc : pkg.columns)
    size += 8 + 2 + 8 + 8 * static_cast<std::uint64_t>(wc.rows.size());
  return size;
}

std::vector<std::byte> encode_package(const package& pkg) {
  std::vector<std::byte> out;
  out.reserve(static_cast<std::size_t>(encoded_package_size(pkg)));
  wire::put_magic(out, "DPKG");
  wire::put_u16(out, wire_version);
  wire::put_u64(out, static_cast<std::uint64_t>(pkg.column_range));
  wire::put_u64(out, static_cast<std::uint64_t>(pkg.columns.size()));
  for (const work_column& wc : pkg.columns) {
    wire::put_u64(out, static_cast<std::uint64_t>(wc.index));
    wire::put_u16(out, static_cast<std::uint16_t>(wc.dim));
    wire::put_u64(out, static_cast<std::uint64_t>(wc.rows.size()));
    for (index_t r : wc.rows) wire::put_u64(out, static_cast<std::uint64_t>(r));
  }
  return out;
}

package decode_package(std::span<const std::byte> bytes) {
  wire::reader r{bytes};
  r.expect_magic("DPKG");
  if (std::uint16_t v = r.u16("version"); v != wire_version) {
    r.pos -= 2;
    r.fail("unsupported version " + std::to_string(v));
  }
  package pkg;
  std::uint64_t range = r.u64("column range");
  if (range == 0 || range > static_cast<std::uint64_t>(std::numeric_limits<int>::max())) {
    r.pos -= 8;
    r.fail("column range out of bounds");
  }
  pkg.column_range = static_cast<int>(range);
  std::uint64_t count = r.u64("column count");
  pkg.columns.reserve(static_cast<std::size_t>(count));
  index_t prev_index = 0;
  for (std::uint64_t c = 0; c < count; ++c) {
    work_column wc;
    std::uint64_t index = r.u64("column index");
    if (index == 0 || index > static_cast<std::uint64_t>(std::numeric_limits<index_t>::max()))
      r.fail("column index out of bounds");
    wc.index = static_cast<index_t>(index);
    if (wc.index <= prev_index) r.fail("column indices not strictly increasing");
    prev_index = wc.index;
    std::uint16_t dim = r.u16("column dim");
    if (dim > static_cast<std::uint16_t>(std::numeric_limits<dim_t>::max()))
      r.fail("column dim out of bounds");
    wc.dim = static_cast<dim_t>(dim);
    std::uint64_t rows = r.u64("row count");
    wc.rows.reserve(static_cast<std::size_t>(rows));
    index_t prev_row = 0;
    for (std::uint64_t k = 0; k < rows; ++k) {
      std::uint64_t row = r.u64("row index");
      if (row == 0 || row > static_cast<std::uint64_t>(std::numeric_limits<index_t>::max()))
        r.fail("row index out of bounds");
      auto ri = static_cast<index_t>(row);
      if (ri <= prev_row) r.fail("row indices not strictly increasing");
      prev_row = ri;
      wc.rows.push_back(ri);
    }
    pkg.columns.push_back(std::move(wc));
  }
  r.finish();
  pkg.byte_size = bytes.size();
  return pkg;
}

package make_package(int column_range, work_set columns) {
  package pkg;
  pkg.column_range = column_range;
  pkg.columns = std::move(columns);
  pkg.byte_size = encoded_package_size(pkg);
  return pkg;
}

}  // namespace dph
