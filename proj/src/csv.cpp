#include "evc/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>

namespace evc {

void write_rank_csv(std::ostream& out, const SparseGraph& g,
                    const std::vector<double>& scores) {
  std::vector<RankRow> rows(scores.size());
  for (VertexId v = 0; v < scores.size(); ++v)
    rows[v] = {g.label_of(v), scores[v]};
  std::sort(rows.begin(), rows.end(), [](const RankRow& a, const RankRow& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.label < b.label;
  });
  out << "vertex_label,score\n";
  char buf[64];
  for (const RankRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%.12g", r.score);
    out << r.label << ',' << buf << '\n';
  }
}

std::vector<RankRow> read_rank_csv(std::istream& in) {
  std::vector<RankRow> rows;
  std::string line;
  if (!std::getline(in, line) || line.rfind("vertex_label", 0) != 0)
    throw std::runtime_error("rank csv: missing header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::size_t comma = line.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error("rank csv: malformed row");
    rows.push_back({std::stoll(line.substr(0, comma)),
                    std::stod(line.substr(comma + 1))});
  }
  return rows;
}

}  // namespace evc
