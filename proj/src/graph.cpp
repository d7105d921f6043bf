#include "evc/graph.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>

#include "evc/kernels.hpp"

namespace evc {

SparseGraph SparseGraph::from_edges(VertexId n, std::vector<Edge> edges,
                                    Orientation orientation) {
  for (const Edge& e : edges) {
    if (e.src >= n || e.dst >= n)
      throw std::invalid_argument("edge endpoint out of range");
    if (!(e.weight >= 0.0))
      throw std::invalid_argument("negative or NaN edge weight");
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.src != b.src ? a.src < b.src : a.dst < b.dst;
  });

  SparseGraph g;
  g.n_ = n;
  g.orientation_ = orientation;
  g.row_ptr_.assign(static_cast<std::size_t>(n) + 1, 0);
  g.col_.reserve(edges.size());
  g.weight_.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size();) {
    std::size_t j = i + 1;
    double w = edges[i].weight;
    while (j < edges.size() && edges[j].src == edges[i].src &&
           edges[j].dst == edges[i].dst) {
      w += edges[j].weight;  // duplicates merge by weight summation
      ++j;
    }
    g.col_.push_back(edges[i].dst);
    g.weight_.push_back(w);
    g.row_ptr_[edges[i].src + 1]++;
    i = j;
  }
  for (VertexId v = 0; v < n; ++v) g.row_ptr_[v + 1] += g.row_ptr_[v];
  return g;
}

double SparseGraph::self_loop_weight(VertexId v) const {
  auto ts = targets(v);
  auto ws = edge_weights(v);
  for (std::size_t i = 0; i < ts.size(); ++i)
    if (ts[i] == v) return ws[i];
  return 0.0;
}

void SparseGraph::multiply(const double* x, double* y) const {
  kernels::active().spmv(n_, row_ptr_.data(), col_.data(), weight_.data(), x,
                         y);
}

namespace {

struct RawEdge {
  std::int64_t src;
  std::int64_t dst;
  double weight;
};

// Parses one data line already known to be non-comment, non-blank.
RawEdge parse_line(const std::string& line, std::size_t lineno) {
  const char* p = line.c_str();
  char* end = nullptr;

  auto skip_ws = [&] {
    while (*p == ' ' || *p == '\t' || *p == '\r') ++p;
  };

  auto read_int = [&]() -> std::int64_t {
    skip_ws();
    errno = 0;
    long long v = std::strtoll(p, &end, 10);
    if (end == p || errno != 0)
      throw ParseError(lineno, "expected integer vertex id");
    if (*end != '\0' && !std::isspace(static_cast<unsigned char>(*end)))
      throw ParseError(lineno, "non-integer vertex id");
    p = end;
    return v;
  };

  RawEdge e;
  e.src = read_int();
  e.dst = read_int();
  skip_ws();
  if (*p == '\0') {
    e.weight = 1.0;
    return e;
  }
  errno = 0;
  e.weight = std::strtod(p, &end);
  if (end == p || errno != 0) throw ParseError(lineno, "malformed weight");
  p = end;
  skip_ws();
  if (*p != '\0') throw ParseError(lineno, "trailing characters after weight");
  if (!(e.weight >= 0.0)) throw ParseError(lineno, "negative weight");
  return e;
}

}  // namespace

SparseGraph parse_edge_list(std::istream& in) {
  std::vector<RawEdge> raw;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t k = line.find_first_not_of(" \t\r");
    if (k == std::string::npos) continue;
    if (line[k] == '#') continue;
    raw.push_back(parse_line(line, lineno));
  }
  if (raw.empty()) throw ParseError(lineno, "empty input: no edges");

  // Remap labels to dense ids in ascending label order.
  std::vector<std::int64_t> labels;
  labels.reserve(raw.size() * 2);
  for (const RawEdge& e : raw) {
    labels.push_back(e.src);
    labels.push_back(e.dst);
  }
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  if (labels.size() > 0x7fffffffULL)
    throw ParseError(lineno, "too many vertices");

  auto dense = [&](std::int64_t label) -> VertexId {
    return static_cast<VertexId>(
        std::lower_bound(labels.begin(), labels.end(), label) -
        labels.begin());
  };

  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (const RawEdge& e : raw)
    edges.push_back({dense(e.src), dense(e.dst), e.weight});

  SparseGraph g = SparseGraph::from_edges(
      static_cast<VertexId>(labels.size()), std::move(edges));
  g.labels_ = std::move(labels);
  return g;
}

SparseGraph transpose(const SparseGraph& g) {
  SparseGraph t;
  t.n_ = g.n_;
  t.labels_ = g.labels_;
  t.orientation_ = g.orientation_ == Orientation::original
                       ? Orientation::transposed
                       : Orientation::original;
  const std::uint64_t m = g.edge_count();
  t.row_ptr_.assign(static_cast<std::size_t>(g.n_) + 1, 0);
  t.col_.resize(m);
  t.weight_.resize(m);
  for (std::uint64_t k = 0; k < m; ++k) t.row_ptr_[g.col_[k] + 1]++;
  for (VertexId v = 0; v < g.n_; ++v) t.row_ptr_[v + 1] += t.row_ptr_[v];
  std::vector<std::uint64_t> next(t.row_ptr_.begin(), t.row_ptr_.end() - 1);
  for (VertexId u = 0; u < g.n_; ++u) {
    for (std::uint64_t k = g.row_ptr_[u]; k < g.row_ptr_[u + 1]; ++k) {
      std::uint64_t slot = next[g.col_[k]]++;
      t.col_[slot] = u;
      t.weight_[slot] = g.weight_[k];
    }
  }
  return t;
}

std::vector<double> row_sums(const SparseGraph& g) {
  std::vector<double> sums(g.vertex_count(), 0.0);
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    double s = 0.0;
    for (double w : g.edge_weights(u)) s += w;
    sums[u] = s;
  }
  return sums;
}

GraphSlice induced_subgraph(const SparseGraph& g,
                            std::span<const VertexId> vertices) {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i] >= g.vertex_count())
      throw std::invalid_argument("subset vertex out of range");
    if (i > 0 && vertices[i] <= vertices[i - 1])
      throw std::invalid_argument("subset must be sorted and duplicate-free");
  }

  auto local_id = [&](VertexId v) -> std::int64_t {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
    if (it == vertices.end() || *it != v) return -1;
    return it - vertices.begin();
  };

  std::vector<Edge> edges;
  for (std::size_t lu = 0; lu < vertices.size(); ++lu) {
    VertexId u = vertices[lu];
    auto ts = g.targets(u);
    auto ws = g.edge_weights(u);
    for (std::size_t k = 0; k < ts.size(); ++k) {
      std::int64_t lv = local_id(ts[k]);
      if (lv >= 0)
        edges.push_back({static_cast<VertexId>(lu),
                         static_cast<VertexId>(lv), ws[k]});
    }
  }

  GraphSlice slice;
  slice.local = SparseGraph::from_edges(
      static_cast<VertexId>(vertices.size()), std::move(edges),
      g.orientation());
  slice.global_of.assign(vertices.begin(), vertices.end());
  return slice;
}

void write_edge_list(std::ostream& out, const SparseGraph& g) {
  char buf[64];
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    auto ts = g.targets(u);
    auto ws = g.edge_weights(u);
    for (std::size_t k = 0; k < ts.size(); ++k) {
      out << g.label_of(u) << '\t' << g.label_of(ts[k]);
      if (ws[k] != 1.0) {
        std::snprintf(buf, sizeof buf, "%.17g", ws[k]);
        out << '\t' << buf;
      }
      out << '\n';
    }
  }
}

}  // namespace evc
