#pragma once

// Internal little-endian buffer helpers shared by the codecs.

#include <bit>
#include <cstring>
#include <fstream>

#include "dph/package.hpp"

namespace dph::wire {

static_assert(std::endian::native == std::endian::little,
              "codecs assume a little-endian host");

inline void put_u16(std::vector<std::byte>& out, std::uint16_t v) {
  const auto* b = reinterpret_cast<const std::byte*>(&v);
  out.insert(out.end(), b, b + 2);
}

inline void put_u64(std::vector<std::byte>& out, std::uint64_t v) {
  const auto* b = reinterpret_cast<const std::byte*>(&v);
  out.insert(out.end(), b, b + 8);
}

inline void put_f64(std::vector<std::byte>& out, double v) {
  const auto* b = reinterpret_cast<const std::byte*>(&v);
  out.insert(out.end(), b, b + 8);
}

inline void put_magic(std::vector<std::byte>& out, const char (&magic)[5]) {
  const auto* b = reinterpret_cast<const std::byte*>(magic);
  out.insert(out.end(), b, b + 4);
}

struct reader {
  std::span<const std::byte> data;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const { throw decode_error(pos, what); }

  void need(std::size_t count, const char* what) const {
    if (pos + count > data.size()) throw decode_error(pos, std::string("truncated ") + what);
  }

  void expect_magic(const char (&magic)[5]) {
    need(4, "magic");
    if (std::memcmp(data.data() + pos, magic, 4) != 0)
      fail(std::string("bad magic, expected ") + magic);
    pos += 4;
  }

  std::uint16_t u16(const char* what) {
    need(2, what);
    std::uint16_t v;
    std::memcpy(&v, data.data() + pos, 2);
    pos += 2;
    return v;
  }

  std::uint64_t u64(const char* what) {
    need(8, what);
    std::uint64_t v;
    std::memcpy(&v, data.data() + pos, 8);
    pos += 8;
    return v;
  }

  double f64(const char* what) {
    need(8, what);
    double v;
    std::memcpy(&v, data.data() + pos, 8);
    pos += 8;
    return v;
  }

  void finish() const {
    if (pos != data.size()) throw decode_error(pos, "trailing bytes after frame");
  }
};

inline std::vector<std::byte> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  in.seekg(0, std::ios::end);
  auto size = static_cast<std::size_t>(in.tellg());
  in.seekg(0);
  std::vector<std::byte> bytes(size);
  if (size > 0) in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(size));
  if (!in) throw std::runtime_error("cannot read " + path);
  return bytes;
}

inline void write_file(const std::string& path, std::span<const std::byte> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("cannot write " + path);
}

}  // namespace dph::wire
