#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace evc {

using VertexId = std::uint32_t;

enum class Orientation { original, transposed };

// Thrown on malformed edge-list input; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct Edge {
  VertexId src;
  VertexId dst;
  double weight;
};

/// Immutable CSR adjacency of a weighted directed graph. Rows are the
/// stored direction's sources; duplicate (src,dst) pairs are merged by
/// summing weights at construction. Self-loops permitted, weights >= 0.
class SparseGraph {
 public:
  SparseGraph() = default;

  // Dense-id construction; merges duplicates, validates ids and weights.
  static SparseGraph from_edges(VertexId n, std::vector<Edge> edges,
                                Orientation orientation = Orientation::original);

  VertexId vertex_count() const { return n_; }
  std::uint64_t edge_count() const { return static_cast<std::uint64_t>(col_.size()); }
  Orientation orientation() const { return orientation_; }

  std::span<const std::uint32_t> targets(VertexId u) const {
    return {col_.data() + row_ptr_[u], col_.data() + row_ptr_[u + 1]};
  }
  std::span<const double> edge_weights(VertexId u) const {
    return {weight_.data() + row_ptr_[u], weight_.data() + row_ptr_[u + 1]};
  }
  const std::vector<std::uint64_t>& row_offsets() const { return row_ptr_; }
  const std::vector<std::uint32_t>& column_indices() const { return col_; }
  const std::vector<double>& values() const { return weight_; }

  // Original label of a dense id (identity when the graph was built from
  // dense ids directly).
  std::int64_t label_of(VertexId v) const {
    return labels_.empty() ? static_cast<std::int64_t>(v) : labels_[v];
  }
  bool has_labels() const { return !labels_.empty(); }

  double self_loop_weight(VertexId v) const;

  // y = M x in the stored direction, via the active kernel table.
  void multiply(const double* x, double* y) const;

  friend SparseGraph transpose(const SparseGraph& g);
  friend SparseGraph parse_edge_list(std::istream& in);

 private:
  VertexId n_ = 0;
  std::vector<std::uint64_t> row_ptr_{0};
  std::vector<std::uint32_t> col_;
  std::vector<double> weight_;
  std::vector<std::int64_t> labels_;  // dense id -> original label
  Orientation orientation_ = Orientation::original;
};

/// Parse a whitespace-separated edge list: '#' lines are comments, data
/// lines are `src dst [weight]` (weight defaults to 1). Labels are remapped
/// to dense ids in ascending label order; the mapping is kept on the graph.
/// Compatible with the SNAP text distribution format.
SparseGraph parse_edge_list(std::istream& in);

SparseGraph transpose(const SparseGraph& g);

// Per-vertex sum of outgoing weights in the stored direction.
std::vector<double> row_sums(const SparseGraph& g);

/// Subgraph induced by a sorted vertex subset; local ids follow subset
/// order and `global_of` maps them back.
struct GraphSlice {
  SparseGraph local;
  std::vector<VertexId> global_of;
};

GraphSlice induced_subgraph(const SparseGraph& g,
                            std::span<const VertexId> vertices);

// Writes `label label [weight]` lines; weight omitted when exactly 1.
// Parsing the output reproduces the merged edge set.
void write_edge_list(std::ostream& out, const SparseGraph& g);

}  // namespace evc
