#pragma once

#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "evc/condensation.hpp"
#include "evc/graph.hpp"

namespace evc {

struct SolveOptions {
  double tol = 1e-9;          // max-abs change between successive iterates
  int max_iter = 10000;
  int series_check_at = 20;   // term-decay checkpoint spacing
  std::vector<int> eig_check_at = {10, 20};  // early eigenvalue screening
  double half_factor = 0.5;   // discard when estimate < half_factor * lambda_max
  double zero_input_tol = 1e-12;

  // Driver toggles.
  bool row_sum_skip = true;
  bool half_discard = true;
  bool batch_singles = true;
  bool parallel_levels = false;
};

enum class SolveStatus {
  converged_series,
  converged_power,
  skipped_bound,
  discarded_half,
  zero,
  diverged,  // internal signal: series terms not decaying, use power fallback
};

std::string_view to_string(SolveStatus s);

struct IterationOutcome {
  std::vector<double> vector;  // component-local, non-negative
  double lambda_est = 0.0;
  int iterations = 0;          // matrix-vector products performed
  SolveStatus status = SolveStatus::zero;
  bool hit_max_iter = false;
};

// Early-screening hook: called at each opts.eig_check_at iteration with the
// current eigenvalue estimate; returning true aborts with discarded_half.
using EigCheck = std::function<bool(double lambda_est, int iteration)>;

/// Power method x <- M x / ||M x||_1 on the stored direction of m (callers
/// pass transposed structures). Stops when the max-abs change of successive
/// normalized iterates drops below opts.tol; lambda_est is the L1 growth of
/// the final step, so ||M x - lambda x||_inf <= lambda * tol at exit.
IterationOutcome power_iteration(const SparseGraph& m,
                                 std::span<const double> x0,
                                 const SolveOptions& opts,
                                 const EigCheck& early_check = {});

// L1 growth ratio ||next||_1 / ||prev||_1; equals ||next||_1 when prev is
// normalized. Throws if prev is zero.
double estimate_eigenvalue(std::span<const double> prev,
                           std::span<const double> next_unnormalized);

enum class TermTrend { converging, not_converging };

// Strict-decrease test between checkpoint term norms.
TermTrend detect_divergence(double prev_checkpoint_norm, double current_norm);

/// Accumulates the series sum_{i>=0} (M / lambda_max)^i v by repeated term
/// updates. Converges (converged_series) when the latest term's max-abs
/// entry falls below opts.tol; every opts.series_check_at iterations the
/// term norm must have strictly decreased since the previous checkpoint,
/// otherwise the outcome is flagged diverged for power fallback. A term
/// that becomes exactly zero ends the sum exactly.
IterationOutcome series_accumulate(const SparseGraph& m,
                                   std::span<const double> v,
                                   double lambda_max,
                                   const SolveOptions& opts);

/// Closed-form ranks for a level's batch of 1-vertex components: with
/// self-loop weight a and injected weight w the geometric series gives
/// w * lambda_max / (lambda_max - a) when lambda_max > a (w exactly when
/// a = 0); otherwise the member dominates the running eigenvalue and gets
/// rank 1, the power-fallback convention.
std::vector<double> single_vertex_batch(const SingleVertexGroup& group,
                                        std::span<const double> weights,
                                        double lambda_max);

}  // namespace evc
