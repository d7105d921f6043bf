#include "evc/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "evc/kernels.hpp"

namespace evc {

namespace {
constexpr double kTieRel = 1e-12;
}

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::converged_series: return "converged-series";
    case SolveStatus::converged_power: return "converged-power";
    case SolveStatus::skipped_bound: return "skipped-bound";
    case SolveStatus::discarded_half: return "discarded-half";
    case SolveStatus::zero: return "zero";
    case SolveStatus::diverged: return "diverged";
  }
  return "unknown";
}

IterationOutcome power_iteration(const SparseGraph& m,
                                 std::span<const double> x0,
                                 const SolveOptions& opts,
                                 const EigCheck& early_check) {
  const std::size_t n = m.vertex_count();
  if (x0.size() != n)
    throw std::invalid_argument("power_iteration: dimension mismatch");
  const auto& k = kernels::active();
  double norm0 = k.l1_norm(x0.data(), n);
  if (!(norm0 > 0.0))
    throw std::invalid_argument("power_iteration: zero start vector");
  for (double v : x0)
    if (v < 0.0)
      throw std::invalid_argument("power_iteration: negative start entry");

  IterationOutcome out;
  out.vector.assign(x0.begin(), x0.end());
  k.scale(out.vector.data(), n, 1.0 / norm0);

  std::vector<double> next(n);
  for (int it = 1; it <= opts.max_iter; ++it) {
    m.multiply(out.vector.data(), next.data());
    const double lambda = k.l1_norm(next.data(), n);
    out.iterations = it;
    if (lambda < opts.zero_input_tol) {
      // Product vanished (nilpotent direction); keep the last iterate as
      // the degenerate eigenvector, eigenvalue 0.
      out.lambda_est = 0.0;
      out.status = SolveStatus::zero;
      return out;
    }
    k.scale(next.data(), n, 1.0 / lambda);
    const double change = k.max_abs_diff(next.data(), out.vector.data(), n);
    out.vector.swap(next);
    out.lambda_est = lambda;
    if (early_check &&
        std::find(opts.eig_check_at.begin(), opts.eig_check_at.end(), it) !=
            opts.eig_check_at.end()) {
      if (early_check(lambda, it)) {
        out.status = SolveStatus::discarded_half;
        std::fill(out.vector.begin(), out.vector.end(), 0.0);
        return out;
      }
    }
    if (change < opts.tol) {
      out.status = SolveStatus::converged_power;
      return out;
    }
  }
  out.status = SolveStatus::converged_power;
  out.hit_max_iter = true;
  return out;
}

double estimate_eigenvalue(std::span<const double> prev,
                           std::span<const double> next_unnormalized) {
  const auto& k = kernels::active();
  const double p = k.l1_norm(prev.data(), prev.size());
  if (!(p > 0.0))
    throw std::invalid_argument("estimate_eigenvalue: zero previous iterate");
  return k.l1_norm(next_unnormalized.data(), next_unnormalized.size()) / p;
}

TermTrend detect_divergence(double prev_checkpoint_norm, double current_norm) {
  return current_norm < prev_checkpoint_norm * (1.0 - kTieRel)
             ? TermTrend::converging
             : TermTrend::not_converging;
}

IterationOutcome series_accumulate(const SparseGraph& m,
                                   std::span<const double> v,
                                   double lambda_max,
                                   const SolveOptions& opts) {
  const std::size_t n = m.vertex_count();
  if (v.size() != n)
    throw std::invalid_argument("series_accumulate: dimension mismatch");
  const auto& k = kernels::active();

  IterationOutcome out;
  out.vector.assign(v.begin(), v.end());     // running sum, i = 0 term
  out.lambda_est = lambda_max;
  std::vector<double> term(v.begin(), v.end());
  std::vector<double> next(n);

  double checkpoint_norm = k.max_abs(term.data(), n);
  for (int it = 1; it <= opts.max_iter; ++it) {
    m.multiply(term.data(), next.data());
    out.iterations = it;
    const double raw = k.max_abs(next.data(), n);
    if (raw == 0.0) {
      // Exact nilpotent tail; the partial sum is the full sum.
      out.status = SolveStatus::converged_series;
      return out;
    }
    if (!(lambda_max > 0.0)) {
      out.status = SolveStatus::diverged;
      return out;
    }
    k.scale(next.data(), n, 1.0 / lambda_max);
    term.swap(next);
    k.axpy(out.vector.data(), term.data(), n, 1.0);
    const double term_norm = k.max_abs(term.data(), n);
    if (term_norm < opts.tol) {
      out.status = SolveStatus::converged_series;
      return out;
    }
    if (opts.series_check_at > 0 && it % opts.series_check_at == 0) {
      if (detect_divergence(checkpoint_norm, term_norm) ==
          TermTrend::not_converging) {
        out.status = SolveStatus::diverged;
        return out;
      }
      checkpoint_norm = term_norm;
    }
  }
  out.status = SolveStatus::converged_series;
  out.hit_max_iter = true;
  return out;
}

std::vector<double> single_vertex_batch(const SingleVertexGroup& group,
                                        std::span<const double> weights,
                                        double lambda_max) {
  if (weights.size() != group.members.size())
    throw std::invalid_argument("single_vertex_batch: weight count mismatch");
  std::vector<double> ranks(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double w = weights[i];
    if (w < 0.0)
      throw std::invalid_argument("single_vertex_batch: negative weight");
    const double a = group.self_loop_weight[i];
    if (a == 0.0 && lambda_max > 0.0) {
      ranks[i] = w;  // single nonzero series term
    } else if (lambda_max > a) {
      ranks[i] = w * lambda_max / (lambda_max - a);
    } else {
      ranks[i] = 1.0;  // member dominates: local eigenvector convention
    }
  }
  return ranks;
}

}  // namespace evc
