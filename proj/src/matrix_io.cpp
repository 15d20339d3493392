#include "dph/matrix_io.hpp"

#include <algorithm>
#include <limits>

#include "wire.hpp"

namespace dph {

namespace {
constexpr std::uint16_t dbnd_version = 1;
constexpr std::uint16_t dval_version = 1;
}  // namespace

void write_matrix(const boundary_matrix& m, const std::string& path) {
  const index_t n = m.size();
  std::uint64_t entries = 0;
  for (const column& c : m.columns) entries += c.size();

  std::vector<std::byte> out;
  out.reserve(static_cast<std::size_t>(14 + 2 * n + 8 * (n + 1)) +
              static_cast<std::size_t>(8 * entries));
  wire::put_magic(out, "DBND");
  wire::put_u16(out, dbnd_version);
  wire::put_u64(out, static_cast<std::uint64_t>(n));
  for (dim_t d : m.dims) wire::put_u16(out, static_cast<std::uint16_t>(d));
  std::uint64_t offset = 0;
  wire::put_u64(out, 0);
  for (const column& c : m.columns) {
    offset += c.size();
    wire::put_u64(out, offset);
  }
  for (const column& c : m.columns)
    for (index_t r : c) wire::put_u64(out, static_cast<std::uint64_t>(r));
  wire::write_file(path, out);
}

boundary_matrix read_matrix(const std::string& path) {
  std::vector<std::byte> bytes = wire::read_file(path);
  wire::reader r{bytes};
  r.expect_magic("DBND");
  if (std::uint16_t v = r.u16("version"); v != dbnd_version) {
    r.pos -= 2;
    r.fail("unsupported version " + std::to_string(v));
  }
  std::uint64_t n = r.u64("cell count");
  if (n > static_cast<std::uint64_t>(std::numeric_limits<index_t>::max()) / 16)
    r.fail("cell count out of bounds");

  boundary_matrix m;
  m.dims.reserve(static_cast<std::size_t>(n));
  for (std::uint64_t j = 0; j < n; ++j) {
    std::uint16_t d = r.u16("dims table");
    if (d > static_cast<std::uint16_t>(std::numeric_limits<dim_t>::max()))
      r.fail("dimension out of bounds");
    m.dims.push_back(static_cast<dim_t>(d));
  }

  std::vector<std::uint64_t> offsets;
  offsets.reserve(static_cast<std::size_t>(n) + 1);
  for (std::uint64_t j = 0; j <= n; ++j) {
    std::uint64_t o = r.u64("offset table");
    if (!offsets.empty() && o < offsets.back()) {
      r.pos -= 8;
      r.fail("non-monotone offsets");
    }
    offsets.push_back(o);
  }
  if (offsets.front() != 0) throw decode_error(14 + 2 * static_cast<std::size_t>(n),
                                               "first offset must be zero");

  m.columns.resize(static_cast<std::size_t>(n));
  for (std::uint64_t j = 0; j < n; ++j) {
    std::uint64_t count = offsets[static_cast<std::size_t>(j) + 1] -
                          offsets[static_cast<std::size_t>(j)];
    column& col = m.columns[static_cast<std::size_t>(j)];
    col.reserve(static_cast<std::size_t>(count));
    for (std::uint64_t k = 0; k < count; ++k) {
      std::uint64_t row = r.u64("row table");
      if (row == 0 || row > n) r.fail("row index out of bounds");
      col.push_back(static_cast<index_t>(row));
    }
  }
  r.finish();
  return m;
}

void write_values(const std::vector<double>& values, const std::string& path) {
  std::vector<std::byte> out;
  out.reserve(14 + values.size() * 8);
  wire::put_magic(out, "DVAL");
  wire::put_u16(out, dval_version);
  wire::put_u64(out, static_cast<std::uint64_t>(values.size()));
  for (double v : values) wire::put_f64(out, v);
  wire::write_file(path, out);
}

std::vector<double> read_values(const std::string& path) {
  std::vector<std::byte> bytes = wire::read_file(path);
  wire::reader r{bytes};
  r.expect_magic("DVAL");
  if (std::uint16_t v = r.u16("version"); v != dval_version) {
    r.pos -= 2;
    r.fail("unsupported version " + std::to_string(v));
  }
  std::uint64_t n = r.u64("value count");
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(n));
  for (std::uint64_t j = 0; j < n; ++j) values.push_back(r.f64("value"));
  r.finish();
  return values;
}

dbnd_provider::dbnd_provider(const std::string& path, index_t lo, index_t hi)
    : file_(path, std::ios::binary), path_(path), lo_(lo), hi_(hi) {
  if (!file_) throw std::runtime_error("cannot open " + path);
  char magic[4];
  std::uint16_t version = 0;
  std::uint64_t n = 0;
  file_.read(magic, 4);
  file_.read(reinterpret_cast<char*>(&version), 2);
  file_.read(reinterpret_cast<char*>(&n), 8);
  if (!file_ || std::memcmp(magic, "DBND", 4) != 0)
    throw std::runtime_error(path + ": bad magic");
  if (version != dbnd_version)
    throw std::runtime_error(path + ": unsupported version " + std::to_string(version));
  n_ = static_cast<index_t>(n);

  dims_.resize(static_cast<std::size_t>(n));
  std::vector<std::uint16_t> raw(static_cast<std::size_t>(n));
  file_.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(2 * n));
  for (std::size_t j = 0; j < raw.size(); ++j) {
    dims_[j] = static_cast<dim_t>(raw[j]);
    max_dim_ = std::max(max_dim_, dims_[j]);
  }
  offsets_.resize(static_cast<std::size_t>(n) + 1);
  file_.read(reinterpret_cast<char*>(offsets_.data()),
             static_cast<std::streamsize>(8 * (n + 1)));
  if (!file_) throw std::runtime_error(path + ": truncated header tables");
  for (std::size_t j = 0; j + 1 < offsets_.size(); ++j)
    if (offsets_[j + 1] < offsets_[j]) throw std::runtime_error(path + ": non-monotone offsets");
  rows_base_ = 14 + 2 * n + 8 * (n + 1);
}

work_set dbnd_provider::load_dimension(dim_t d) {
  work_set out;
  for (index_t j = lo_ + 1; j <= hi_; ++j) {
    if (dims_[static_cast<std::size_t>(j - 1)] != d) continue;
    std::uint64_t begin = offsets_[static_cast<std::size_t>(j - 1)];
    std::uint64_t end = offsets_[static_cast<std::size_t>(j)];
    work_column wc;
    wc.index = j;
    wc.dim = d;
    wc.rows.resize(static_cast<std::size_t>(end - begin));
    file_.seekg(static_cast<std::streamoff>(rows_base_ + 8 * begin));
    file_.read(reinterpret_cast<char*>(wc.rows.data()),
               static_cast<std::streamsize>(8 * (end - begin)));
    if (!file_) throw std::runtime_error(path_ + ": truncated row table");
    out.push_back(std::move(wc));
  }
  return out;
}

}  // namespace dph
