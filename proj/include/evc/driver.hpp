#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "evc/condensation.hpp"
#include "evc/graph.hpp"
#include "evc/spectral.hpp"

namespace evc {

struct ComponentOutcome {
  double lambda_est = 0.0;
  int iterations = 0;
  SolveStatus status = SolveStatus::zero;
  bool hit_max_iter = false;
  bool solved = false;
  bool nonzero = false;  // centrality slice currently nonzero
};

/// Running solver state across levels: the best dominant-eigenvalue
/// estimate so far, the global centrality under construction, and the
/// donated weights waiting for lower levels.
struct GlobalState {
  double lambda_max = -1.0;
  std::vector<double> centrality;
  std::vector<double> pending_weights;
  std::vector<ComponentOutcome> per_component;
};

struct UnitRecord {
  std::int64_t component = 0;  // component id; smallest member id for groups
  bool is_group = false;
  std::uint32_t level = 0;
  std::uint32_t size = 0;
  int iterations = 0;
  double lambda = 0.0;
  SolveStatus status = SolveStatus::zero;
  bool converged = true;
};

struct RunReport {
  std::vector<UnitRecord> records;
  long long total_iterations = 0;
  double solve_seconds = 0.0;   // level loop / power loop only
  double total_seconds = 0.0;   // includes component finding
  double lambda_max = 0.0;
  bool all_converged = true;
};

struct BlockPartition {
  std::vector<std::vector<VertexId>> blocks;  // sorted vertex sets
  VertexId total = 0;                         // q
};

/// Level-ordered componentwise solve. Processes components from the top
/// level down, batches 1-vertex components per level, maintains the
/// running dominant eigenvalue with zero-out on new maxima, and propagates
/// boundary donations between levels. The returned vector is
/// L1-normalized; per-unit details land in the report.
std::pair<std::vector<double>, RunReport> run_componentwise(
    const SparseGraph& g, const SolveOptions& opts);

// Whole-graph power iteration on the transposed adjacency.
std::pair<std::vector<double>, RunReport> run_baseline(const SparseGraph& g,
                                                       const SolveOptions& opts);

/// Componentwise solve that first splits weakly disconnected blocks. When
/// the per-block dominant eigenvalues agree (1e-9 relative) the block
/// results are merged with vertex-count weights; otherwise the plain
/// componentwise run on the whole graph is already correct.
std::pair<std::vector<double>, RunReport> run_auto_blocks(
    const SparseGraph& g, const SolveOptions& opts);

/// Solve one component: zero donated input routes to power iteration
/// (ranks zeroed when the eigenvalue falls short of effective_lambda),
/// nonzero input runs the series against state.lambda_max and falls back
/// to power iteration from the donated vector when the terms do not decay.
/// The returned vector is deposit-ready (series results carry their
/// 1/lambda_max factor; fallback keeps the donated L1 mass).
IterationOutcome component_centrality(const GraphSlice& slice,
                                      std::span<const double> incoming,
                                      const GlobalState& state,
                                      const SolveOptions& opts,
                                      double effective_lambda,
                                      bool* from_fallback = nullptr);

IterationOutcome component_centrality(const GraphSlice& slice,
                                      std::span<const double> incoming,
                                      const GlobalState& state,
                                      const SolveOptions& opts);

// True when the slice's max row sum (transposed orientation) is strictly
// below lambda_max, so its dominant eigenvalue cannot compete.
bool skip_by_row_sum_bound(const GraphSlice& slice, double lambda_max);

// True when an early eigenvalue estimate is below half_factor * lambda_max.
bool early_discard(double lambda_est, double lambda_max,
                   const SolveOptions& opts);

// pending[dst] += weight * centrality[src] over the component's outgoing
// boundary edges.
void propagate_weights(const Decomposition& decomp, ComponentId comp,
                       const std::vector<double>& centrality,
                       std::vector<double>& pending);

// Zeroes every solved component whose eigenvalue is strictly below
// new_lambda (1e-12 relative ties retained) and raises lambda_max.
// Pending weights must be rebuilt by the caller afterwards.
void zero_out(GlobalState& state, const Decomposition& decomp,
              double new_lambda);

// Weakly connected components of the undirected support.
BlockPartition detect_blocks(const SparseGraph& g);

// Concatenates (k_i / q) * x_i into a global vector; x_i L1-normalized.
std::vector<double> merge_isolated_blocks(
    const BlockPartition& blocks,
    const std::vector<std::vector<double>>& block_vectors);

void write_report_csv(std::ostream& out, const RunReport& report);

}  // namespace evc
