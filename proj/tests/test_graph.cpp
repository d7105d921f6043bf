#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <sstream>

#include "doctest.h"
#include "evc/graph.hpp"
#include "oracles.hpp"

using evc::Edge;
using evc::ParseError;
using evc::SparseGraph;
using evc::VertexId;

namespace {

SparseGraph parse(const std::string& text) {
  std::istringstream in(text);
  return evc::parse_edge_list(in);
}

std::vector<std::tuple<VertexId, VertexId, double>> edge_set(
    const SparseGraph& g) {
  std::vector<std::tuple<VertexId, VertexId, double>> out;
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    auto ts = g.targets(u);
    auto ws = g.edge_weights(u);
    for (std::size_t k = 0; k < ts.size(); ++k)
      out.emplace_back(u, ts[k], ws[k]);
  }
  return out;
}

}  // namespace

TEST_CASE("parse: two-edge chain") {
  SparseGraph g = parse("1 2\n2 3\n");
  CHECK(g.vertex_count() == 3);
  CHECK(g.edge_count() == 2);
  CHECK(g.label_of(0) == 1);
  CHECK(g.label_of(2) == 3);
  CHECK(g.edge_weights(0)[0] == 1.0);
}

TEST_CASE("parse: comments and duplicate merge") {
  SparseGraph g = parse("# comment\n0 1 2.5\n0 1 0.5\n");
  CHECK(g.vertex_count() == 2);
  CHECK(g.edge_count() == 1);
  CHECK(g.edge_weights(0)[0] == 3.0);
}

TEST_CASE("parse: tabs, blank lines, explicit weights") {
  SparseGraph g = parse("\n  \t\n5\t9\t2\n9 5\n");
  CHECK(g.vertex_count() == 2);
  CHECK(g.label_of(0) == 5);
  CHECK(g.label_of(1) == 9);
  CHECK(g.edge_weights(0)[0] == 2.0);
}

TEST_CASE("parse errors carry line numbers") {
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("# only comments\n"), ParseError);
  CHECK_THROWS_AS(parse("a b\n"), ParseError);
  CHECK_THROWS_AS(parse("0\n"), ParseError);
  CHECK_THROWS_AS(parse("0 1 -2\n"), ParseError);
  CHECK_THROWS_AS(parse("0 1 2 3\n"), ParseError);
  try {
    parse("0 1\nbad line\n");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("from_edges validates input") {
  CHECK_THROWS_AS(SparseGraph::from_edges(2, {{0, 5, 1.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(SparseGraph::from_edges(2, {{0, 1, -1.0}}),
                  std::invalid_argument);
}

TEST_CASE("transpose: single edge and involution") {
  SparseGraph g = parse("0 1\n");
  SparseGraph t = evc::transpose(g);
  CHECK(t.orientation() == evc::Orientation::transposed);
  CHECK(t.targets(1)[0] == 0);
  CHECK(t.targets(0).empty());

  std::mt19937_64 rng(3);
  for (int round = 0; round < 10; ++round) {
    SparseGraph r = oracle::random_graph(rng, 30, 0.1, false);
    SparseGraph tt = evc::transpose(evc::transpose(r));
    CHECK(edge_set(tt) == edge_set(r));
    CHECK(tt.edge_count() == r.edge_count());
  }
}

TEST_CASE("transpose swaps out-sums with in-sums") {
  std::mt19937_64 rng(17);
  SparseGraph g = oracle::random_graph(rng, 25, 0.15, false);
  std::vector<double> in_sums(g.vertex_count(), 0.0);
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    auto ts = g.targets(u);
    auto ws = g.edge_weights(u);
    for (std::size_t k = 0; k < ts.size(); ++k) in_sums[ts[k]] += ws[k];
  }
  std::vector<double> t_sums = evc::row_sums(evc::transpose(g));
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    CHECK(t_sums[v] == doctest::Approx(in_sums[v]).epsilon(1e-14));
}

TEST_CASE("row_sums: fixture row and empty vertex") {
  SparseGraph g = fixtures::seven_block();
  std::vector<double> sums = evc::row_sums(g);
  CHECK(sums[0] == 6.0);

  SparseGraph lonely = SparseGraph::from_edges(3, {{0, 1, 1.0}});
  CHECK(evc::row_sums(lonely)[2] == 0.0);
}

TEST_CASE("max transposed row sum bounds the dominant eigenvalue") {
  std::mt19937_64 rng(29);
  for (int round = 0; round < 30; ++round) {
    const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng() % 9);
    SparseGraph g = oracle::random_graph(rng, n, 0.3, false);
    double bound = 0.0;
    for (double s : evc::row_sums(evc::transpose(g)))
      bound = std::max(bound, s);
    const double lambda =
        oracle::dominant_eigenvalue(oracle::dense_transpose(oracle::dense_from(g)));
    CHECK(lambda <= bound + 1e-6);
  }
}

TEST_CASE("induced_subgraph: identity, fixture block, empty") {
  SparseGraph g = fixtures::seven_block();

  std::vector<VertexId> all = {0, 1, 2, 3, 4, 5, 6};
  evc::GraphSlice full = evc::induced_subgraph(g, all);
  CHECK(edge_set(full.local) == edge_set(g));

  std::vector<VertexId> mid = {2, 3, 4};
  evc::GraphSlice s = evc::induced_subgraph(g, mid);
  oracle::Dense d = oracle::dense_from(s.local);
  CHECK(d[0] == std::vector<double>{1, 1, 0});
  CHECK(d[1] == std::vector<double>{0, 1, 1});
  CHECK(d[2] == std::vector<double>{1, 0, 1});
  CHECK(s.global_of == mid);

  evc::GraphSlice empty = evc::induced_subgraph(g, std::vector<VertexId>{});
  CHECK(empty.local.vertex_count() == 0);
  CHECK(empty.local.edge_count() == 0);
}

TEST_CASE("induced_subgraph rejects bad subsets") {
  SparseGraph g = fixtures::seven_block();
  std::vector<VertexId> out_of_range = {5, 9};
  std::vector<VertexId> dup = {2, 2, 3};
  std::vector<VertexId> unsorted = {3, 2};
  CHECK_THROWS_AS(evc::induced_subgraph(g, out_of_range),
                  std::invalid_argument);
  CHECK_THROWS_AS(evc::induced_subgraph(g, dup), std::invalid_argument);
  CHECK_THROWS_AS(evc::induced_subgraph(g, unsorted), std::invalid_argument);
}

TEST_CASE("serialize then parse is idempotent on the merged edge set") {
  std::mt19937_64 rng(41);
  for (int round = 0; round < 10; ++round) {
    // cycle backbone keeps every vertex on at least one edge so the text
    // form mentions the whole vertex set
    std::vector<Edge> edges;
    const std::uint32_t n = 20;
    for (VertexId v = 0; v < n; ++v) edges.push_back({v, (v + 1) % n, 1.0});
    for (int k = 0; k < 60; ++k) {
      auto u = static_cast<VertexId>(rng() % n);
      auto v = static_cast<VertexId>(rng() % n);
      edges.push_back({u, v, 0.25 + static_cast<double>(rng() % 8) * 0.5});
    }
    SparseGraph g = SparseGraph::from_edges(n, std::move(edges));
    std::ostringstream out;
    evc::write_edge_list(out, g);
    SparseGraph back = parse(out.str());
    // labels are dense already, so ids survive unchanged
    CHECK(edge_set(back) == edge_set(g));

    std::ostringstream out2;
    evc::write_edge_list(out2, back);
    CHECK(out.str() == out2.str());
  }
}
