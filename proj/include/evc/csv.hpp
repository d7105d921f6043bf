#pragma once

#include <iosfwd>
#include <vector>

#include "evc/driver.hpp"
#include "evc/graph.hpp"

namespace evc {

// `vertex_label,score` sorted by descending score, ties by ascending label.
// Scores printed with 12 significant digits.
void write_rank_csv(std::ostream& out, const SparseGraph& g,
                    const std::vector<double>& scores);

struct RankRow {
  std::int64_t label;
  double score;
};

// Reads a rank.csv back (header required); used by round-trip checks.
std::vector<RankRow> read_rank_csv(std::istream& in);

}  // namespace evc
