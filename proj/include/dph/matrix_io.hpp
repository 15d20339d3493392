#pragma once

#include <fstream>
#include <string>

#include "dph/node.hpp"

namespace dph {

// DBND file, little-endian: magic "DBND", version u16, n u64, dims u16[n],
// column offsets u64[n+1] into the row table, row indices u64. Total size is
// 14 + 2n + 8(n+1) + 8*(entries) bytes.
void write_matrix(const boundary_matrix& m, const std::string& path);

// Rejects bad magic/version, truncated or oversized files, and non-monotone
// offsets, naming the problem. Column content is checked by validate().
boundary_matrix read_matrix(const std::string& path);

// Filtration values sidecar: magic "DVAL", version u16, n u64, f64[n].
void write_values(const std::vector<double>& values, const std::string& path);
std::vector<double> read_values(const std::string& path);

// Streams one range of a DBND file per dimension: the dims and offset tables
// are read once, row data only for the columns actually served. This is what
// keeps a socket rank's footprint at its own slice.
class dbnd_provider final : public column_provider {
 public:
  dbnd_provider(const std::string& path, index_t lo, index_t hi);

  index_t cell_count() const override { return n_; }
  dim_t max_dimension() const override { return max_dim_; }
  work_set load_dimension(dim_t d) override;

  const std::vector<dim_t>& dims() const { return dims_; }

 private:
  std::ifstream file_;
  std::string path_;
  index_t n_ = 0;
  dim_t max_dim_ = 0;
  index_t lo_ = 0, hi_ = 0;
  std::vector<dim_t> dims_;
  std::vector<std::uint64_t> offsets_;
  std::uint64_t rows_base_ = 0;   // file offset of the row table
};

}  // namespace dph
