#pragma once

#include <cstdint>

#include "evc/graph.hpp"

namespace evc {

// Deterministic synthetic graphs for benchmarks and tests. A fixed seed
// always produces the same edge set.

/// DAG of strongly connected components with one designated dominant
/// component (cycle with uniform 1.5 self-loops, eigenvalue exactly 2.5).
/// Non-dominant components are directed cycles with at most one weak
/// self-loop, keeping their eigenvalues at or below the golden ratio, so
/// the dominant component is strictly unique. Cross links follow a random
/// topological order.
struct DagOfSccsParams {
  std::uint32_t components = 10;
  std::uint32_t comp_size = 5;
  double link_prob = 0.3;
  std::uint64_t seed = 1;
};
SparseGraph generate_dag_of_sccs(const DagOfSccsParams& p);

/// Web-like graph: one giant component holding `giant_fraction` of the
/// vertices (uniform internal out-degree, dominant eigenvalue >= 12), a
/// near-dominant dense block (eigenvalue 11) upstream of it, and a fringe
/// of small dense components and single vertices linked across a random
/// level structure.
struct GiantComponentParams {
  std::uint32_t n = 10000;
  double giant_fraction = 0.5;
  std::uint64_t seed = 1;
};
SparseGraph generate_giant_component(const GiantComponentParams& p);

/// Weakly disconnected blocks whose components all share dominant
/// eigenvalue 2 exactly (cycles with self-loops on every vertex), chained
/// into levels inside each block.
struct IsolatedBlocksParams {
  std::uint32_t blocks = 2;
  std::uint32_t components_per_block = 3;
  std::uint32_t comp_size = 4;
  std::uint64_t seed = 1;
};
SparseGraph generate_isolated_blocks(const IsolatedBlocksParams& p);

}  // namespace evc
