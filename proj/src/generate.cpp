#include "evc/generate.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace evc {

namespace {

std::uint64_t rand_below(std::mt19937_64& rng, std::uint64_t n) {
  return rng() % n;
}

double rand_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void add_cycle(std::vector<Edge>& edges, VertexId base, std::uint32_t size) {
  for (std::uint32_t i = 0; i < size; ++i)
    edges.push_back({base + i, base + (i + 1) % size, 1.0});
}

void add_all_ones_block(std::vector<Edge>& edges, VertexId base,
                        std::uint32_t size) {
  for (std::uint32_t i = 0; i < size; ++i)
    for (std::uint32_t j = 0; j < size; ++j)
      edges.push_back({base + i, base + j, 1.0});
}

}  // namespace

SparseGraph generate_dag_of_sccs(const DagOfSccsParams& p) {
  if (p.components == 0 || p.comp_size == 0)
    throw std::invalid_argument("generate_dag_of_sccs: empty shape");
  if (!(p.link_prob >= 0.0 && p.link_prob <= 1.0))
    throw std::invalid_argument("generate_dag_of_sccs: link_prob out of range");

  std::mt19937_64 rng(p.seed);
  const std::uint32_t c = p.components;
  const std::uint32_t s = p.comp_size;
  const VertexId n = c * s;
  std::vector<Edge> edges;

  const std::uint32_t dominant = static_cast<std::uint32_t>(rand_below(rng, c));
  for (std::uint32_t i = 0; i < c; ++i) {
    const VertexId base = i * s;
    if (s > 1) add_cycle(edges, base, s);
    if (i == dominant) {
      // Uniform self-loops of 1.5 put the eigenvalue at exactly 2.5,
      // strictly above every other flavor below.
      for (std::uint32_t v = 0; v < s; ++v)
        edges.push_back({base + v, base + v, s > 1 ? 1.5 : 2.5});
    } else {
      // Three fringe flavors: bare cycles (eigenvalue 1, settle at once),
      // a weak self-loop (eigenvalue near 1.16, converges slowly enough
      // for the early-estimate discard to trigger), and a full self-loop
      // (eigenvalue up to the golden ratio, full power runs).
      const double kind = rand_unit(rng);
      if (kind < 0.4) continue;
      const double loop = kind < 0.7 ? 0.5 : 1.0;
      VertexId v = base + static_cast<VertexId>(rand_below(rng, s));
      edges.push_back({v, v, loop});
    }
  }

  // Cross links along a random topological order keep the condensation
  // acyclic while varying where the dominant component sits.
  std::vector<std::uint32_t> order(c);
  std::iota(order.begin(), order.end(), 0);
  for (std::uint32_t i = c; i > 1; --i)
    std::swap(order[i - 1], order[rand_below(rng, i)]);
  for (std::uint32_t i = 0; i < c; ++i)
    for (std::uint32_t j = i + 1; j < c; ++j)
      if (rand_unit(rng) < p.link_prob) {
        VertexId u = order[i] * s + static_cast<VertexId>(rand_below(rng, s));
        VertexId v = order[j] * s + static_cast<VertexId>(rand_below(rng, s));
        edges.push_back({u, v, 1.0});
      }

  return SparseGraph::from_edges(n, std::move(edges));
}

SparseGraph generate_giant_component(const GiantComponentParams& p) {
  if (p.n < 64) throw std::invalid_argument("generate_giant_component: n too small");
  if (!(p.giant_fraction > 0.0 && p.giant_fraction <= 0.9))
    throw std::invalid_argument(
        "generate_giant_component: giant_fraction out of range");

  std::mt19937_64 rng(p.seed);
  const VertexId g = static_cast<VertexId>(p.n * p.giant_fraction);
  std::vector<Edge> edges;

  // Giant component: shuffled Hamiltonian cycle plus 11 random internal
  // targets per vertex. Every row sum is at least 12, so the dominant
  // eigenvalue stays above the dense block's 11.
  std::vector<VertexId> perm(g);
  std::iota(perm.begin(), perm.end(), 0);
  for (VertexId i = g; i > 1; --i)
    std::swap(perm[i - 1], perm[rand_below(rng, i)]);
  for (VertexId i = 0; i < g; ++i)
    edges.push_back({perm[i], perm[(i + 1) % g], 1.0});
  for (VertexId u = 0; u < g; ++u)
    for (int k = 0; k < 11; ++k)
      edges.push_back({u, static_cast<VertexId>(rand_below(rng, g)), 1.0});
  edges.push_back({0, 0, 1.0});  // aperiodicity anchor

  // Remaining vertices: one 11-vertex dense block (eigenvalue 11), small
  // dense components of size 2..4, and single vertices.
  struct Unit {
    VertexId base;
    std::uint32_t size;
    double rank;  // position in the level structure; links go low -> high
  };
  std::vector<Unit> units;
  units.push_back({0, g, 0.5});

  VertexId next = g;
  bool placed_dense = false;
  while (next < p.n) {
    std::uint32_t size;
    if (!placed_dense && p.n - next >= 11) {
      size = 11;
      placed_dense = true;
      units.push_back({next, size, 0.2});  // upstream of the giant
      add_all_ones_block(edges, next, size);
      next += size;
      continue;
    }
    const double kind = rand_unit(rng);
    if (kind < 0.45) {
      size = 1;
      if (rand_unit(rng) < 0.5) edges.push_back({next, next, 1.0});
    } else {
      size = 2 + static_cast<std::uint32_t>(rand_below(rng, 3));
      if (next + size > p.n) size = 1;
      if (size > 1) add_all_ones_block(edges, next, size);
    }
    units.push_back({next, size, rand_unit(rng)});
    next += size;
  }

  // Cross links: every fringe unit attaches to the giant with probability
  // 0.6, plus random unit-to-unit links; direction follows the ranks.
  auto link = [&](const Unit& a, const Unit& b) {
    const Unit& src = a.rank < b.rank ? a : b;
    const Unit& dst = a.rank < b.rank ? b : a;
    VertexId u = src.base + static_cast<VertexId>(rand_below(rng, src.size));
    VertexId v = dst.base + static_cast<VertexId>(rand_below(rng, dst.size));
    edges.push_back({u, v, 1.0});
  };
  for (std::size_t i = 1; i < units.size(); ++i)
    if (rand_unit(rng) < 0.6) link(units[i], units[0]);
  for (std::size_t k = 0; k < 2 * units.size(); ++k) {
    std::size_t a = rand_below(rng, units.size());
    std::size_t b = rand_below(rng, units.size());
    if (a != b && units[a].rank != units[b].rank) link(units[a], units[b]);
  }

  return SparseGraph::from_edges(p.n, std::move(edges));
}

SparseGraph generate_isolated_blocks(const IsolatedBlocksParams& p) {
  if (p.blocks < 2)
    throw std::invalid_argument("generate_isolated_blocks: need >= 2 blocks");
  if (p.components_per_block == 0 || p.comp_size < 2)
    throw std::invalid_argument("generate_isolated_blocks: bad block shape");

  std::mt19937_64 rng(p.seed);
  std::vector<Edge> edges;
  VertexId next = 0;
  for (std::uint32_t b = 0; b < p.blocks; ++b) {
    VertexId prev_comp_base = 0;
    for (std::uint32_t k = 0; k < p.components_per_block; ++k) {
      const VertexId base = next;
      // Cycle with a self-loop on every vertex: eigenvalue exactly 2, so
      // all components across all blocks share the dominant eigenvalue.
      add_cycle(edges, base, p.comp_size);
      for (std::uint32_t v = 0; v < p.comp_size; ++v)
        edges.push_back({base + v, base + v, 1.0});
      if (k > 0) {
        VertexId u =
            prev_comp_base + static_cast<VertexId>(rand_below(rng, p.comp_size));
        edges.push_back({u, base, 1.0});
      }
      prev_comp_base = base;
      next += p.comp_size;
    }
  }
  return SparseGraph::from_edges(next, std::move(edges));
}

}  // namespace evc
