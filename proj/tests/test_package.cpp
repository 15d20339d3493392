#include <doctest.h>

#include <random>

#include "dph/package.hpp"

using namespace dph;

namespace {

package sample_package() {
  work_set ws;
  ws.push_back({6, 1, {2, 3}});
  ws.push_back({9, 2, {4, 6, 8}});
  return make_package(2, std::move(ws));
}

}  // namespace

TEST_SUITE_BEGIN("package");

TEST_CASE("an empty package is a 22-byte frame") {
  package pkg = make_package(3, {});
  CHECK(encoded_package_size(pkg) == 22);
  std::vector<std::byte> frame = encode_package(pkg);
  CHECK(frame.size() == 22);
  package back = decode_package(frame);
  CHECK(back.column_range == 3);
  CHECK(back.columns.empty());
  CHECK(back.byte_size == 22);
}

TEST_CASE("packages round-trip bit-exactly") {
  package pkg = sample_package();
  std::vector<std::byte> frame = encode_package(pkg);
  CHECK(frame.size() == pkg.byte_size);
  package back = decode_package(frame);
  CHECK(back.column_range == pkg.column_range);
  REQUIRE(back.columns.size() == pkg.columns.size());
  for (std::size_t c = 0; c < back.columns.size(); ++c) {
    CHECK(back.columns[c].index == pkg.columns[c].index);
    CHECK(back.columns[c].dim == pkg.columns[c].dim);
    CHECK(back.columns[c].rows == pkg.columns[c].rows);
  }
  CHECK(encode_package(back) == frame);
}

TEST_CASE("bad magic is a decode error at offset 0") {
  std::vector<std::byte> frame = encode_package(sample_package());
  frame[0] = std::byte{'X'};
  frame[1] = std::byte{'X'};
  frame[2] = std::byte{'X'};
  frame[3] = std::byte{'X'};
  try {
    decode_package(frame);
    FAIL("expected decode_error");
  } catch (const decode_error& e) {
    CHECK(e.offset == 0);
  }
}

TEST_CASE("unsupported version is rejected") {
  std::vector<std::byte> frame = encode_package(sample_package());
  frame[4] = std::byte{0x7f};
  CHECK_THROWS_AS(decode_package(frame), decode_error);
}

TEST_CASE("truncation at every byte offset decodes to an error, never a value") {
  std::vector<std::byte> frame = encode_package(sample_package());
  for (std::size_t cut = 0; cut < frame.size(); ++cut) {
    std::vector<std::byte> prefix(frame.begin(), frame.begin() + static_cast<std::ptrdiff_t>(cut));
    CHECK_THROWS_AS(decode_package(prefix), decode_error);
  }
}

TEST_CASE("trailing bytes are rejected") {
  std::vector<std::byte> frame = encode_package(sample_package());
  frame.push_back(std::byte{0});
  CHECK_THROWS_AS(decode_package(frame), decode_error);
}

TEST_CASE("column order is enforced") {
  work_set ws;
  ws.push_back({9, 1, {2}});
  ws.push_back({6, 1, {3}});
  package pkg;
  pkg.column_range = 1;
  pkg.columns = std::move(ws);
  std::vector<std::byte> frame = encode_package(pkg);
  CHECK_THROWS_AS(decode_package(frame), decode_error);
}

TEST_CASE("randomized round-trips") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    work_set ws;
    index_t index = 0;
    int columns = static_cast<int>(rng() % 6);
    for (int c = 0; c < columns; ++c) {
      index += 1 + static_cast<index_t>(rng() % 50);
      work_column wc;
      wc.index = index;
      wc.dim = static_cast<dim_t>(rng() % 4);
      index_t row = 0;
      int rows = static_cast<int>(rng() % 8);
      for (int k = 0; k < rows; ++k) {
        row += 1 + static_cast<index_t>(rng() % 40);
        wc.rows.push_back(row);
      }
      ws.push_back(std::move(wc));
    }
    package pkg = make_package(1 + static_cast<int>(rng() % 8), std::move(ws));
    std::vector<std::byte> frame = encode_package(pkg);
    REQUIRE(frame.size() == pkg.byte_size);
    package back = decode_package(frame);
    CHECK(encode_package(back) == frame);
  }
}

TEST_SUITE_END();
