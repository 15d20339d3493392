#include "dph/pairs_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

#include "wire.hpp"

namespace dph {

namespace {

constexpr std::uint16_t dprs_version = 1;
constexpr char text_header[] = "# dph pairs: dim birth death\n";

struct record {
  dim_t dim;
  index_t birth;
  index_t death;   // infinite_death for essentials
};

std::vector<record> to_records(const pairs_file& pf) {
  std::vector<record> recs;
  recs.reserve(pf.pairs.size() + pf.essentials.size());
  for (const persistence_pair& p : pf.pairs) recs.push_back({p.dim, p.birth, p.death});
  for (const essential_class& e : pf.essentials) recs.push_back({e.dim, e.index, infinite_death});
  std::sort(recs.begin(), recs.end(), [](const record& a, const record& b) {
    return std::tie(a.dim, a.birth, a.death) < std::tie(b.dim, b.birth, b.death);
  });
  return recs;
}

}  // namespace

void write_pairs(const pairs_file& pf, const std::string& path, pairs_format fmt) {
  std::vector<record> recs = to_records(pf);
  if (fmt == pairs_format::text) {
    std::ostringstream out;
    out << text_header;
    for (const record& r : recs) {
      out << r.dim << ' ' << r.birth << ' ';
      if (r.death == infinite_death)
        out << "inf";
      else
        out << r.death;
      out << '\n';
    }
    std::string s = out.str();
    wire::write_file(path, std::as_bytes(std::span(s.data(), s.size())));
    return;
  }
  std::vector<std::byte> out;
  out.reserve(14 + recs.size() * 18);
  wire::put_magic(out, "DPRS");
  wire::put_u16(out, dprs_version);
  wire::put_u64(out, recs.size());
  for (const record& r : recs) {
    wire::put_u16(out, static_cast<std::uint16_t>(r.dim));
    wire::put_u64(out, static_cast<std::uint64_t>(r.birth));
    wire::put_u64(out, r.death == infinite_death ? ~std::uint64_t(0)
                                                 : static_cast<std::uint64_t>(r.death));
  }
  wire::write_file(path, out);
}

namespace {

pairs_file from_records(const std::vector<record>& recs, const std::string& path) {
  pairs_file pf;
  for (const record& r : recs) {
    if (r.death == infinite_death) {
      pf.essentials.push_back({r.birth, r.dim});
    } else {
      if (r.death <= r.birth)
        throw std::runtime_error(path + ": pair death must exceed birth");
      pf.pairs.push_back({r.birth, r.death, r.dim});
    }
  }
  sort_canonical(pf.pairs);
  sort_canonical(pf.essentials);
  return pf;
}

pairs_file read_pairs_binary(std::span<const std::byte> bytes) {
  wire::reader r{bytes};
  r.expect_magic("DPRS");
  if (std::uint16_t v = r.u16("version"); v != dprs_version) {
    r.pos -= 2;
    r.fail("unsupported version " + std::to_string(v));
  }
  std::uint64_t count = r.u64("record count");
  std::vector<record> recs;
  recs.reserve(static_cast<std::size_t>(count));
  for (std::uint64_t k = 0; k < count; ++k) {
    record rec{};
    std::uint16_t d = r.u16("record dim");
    if (d > 0x7fff) r.fail("record dim out of bounds");
    rec.dim = static_cast<dim_t>(d);
    std::uint64_t birth = r.u64("record birth");
    if (birth == 0 || birth > static_cast<std::uint64_t>(infinite_death))
      r.fail("record birth out of bounds");
    rec.birth = static_cast<index_t>(birth);
    std::uint64_t death = r.u64("record death");
    rec.death = death == ~std::uint64_t(0) ? infinite_death : static_cast<index_t>(death);
    recs.push_back(rec);
  }
  r.finish();
  return from_records(recs, "binary pairs");
}

index_t parse_index(const std::string& token, std::size_t line_no, const std::string& path) {
  index_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || value < 0)
    throw std::runtime_error(path + ":" + std::to_string(line_no) + ": malformed field '" +
                             token + "'");
  return value;
}

pairs_file read_pairs_text(const std::string& content, const std::string& path) {
  std::vector<record> recs;
  std::istringstream in(content);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string dim_tok, birth_tok, death_tok, extra;
    if (!(ls >> dim_tok >> birth_tok >> death_tok) || (ls >> extra))
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": expected 'dim birth death'");
    record rec{};
    rec.dim = static_cast<dim_t>(parse_index(dim_tok, line_no, path));
    rec.birth = parse_index(birth_tok, line_no, path);
    if (rec.birth == 0)
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": birth must be positive");
    rec.death = death_tok == "inf" ? infinite_death : parse_index(death_tok, line_no, path);
    recs.push_back(rec);
  }
  return from_records(recs, path);
}

}  // namespace

pairs_file read_pairs(const std::string& path) {
  std::vector<std::byte> bytes = wire::read_file(path);
  if (bytes.size() >= 4 && std::memcmp(bytes.data(), "DPRS", 4) == 0)
    return read_pairs_binary(bytes);
  return read_pairs_text(std::string(reinterpret_cast<const char*>(bytes.data()), bytes.size()),
                         path);
}

}  // namespace dph
