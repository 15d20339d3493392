#pragma once

#include <string>

#include "dph/pairs.hpp"

namespace dph {

struct pairs_file {
  std::vector<persistence_pair> pairs;
  std::vector<essential_class> essentials;
};

enum class pairs_format { text, binary };

// Text form: one "dim birth death" record per line after a comment header,
// essential deaths written as "inf". Binary form ("DPRS"): magic, version u16,
// record count u64, then per record dim u16, birth u64, death u64 with
// infinite deaths encoded as the all-ones u64. Both sorted by (dim, birth).
void write_pairs(const pairs_file& pf, const std::string& path, pairs_format fmt);

// Detects the format from the file content.
pairs_file read_pairs(const std::string& path);

}  // namespace dph
