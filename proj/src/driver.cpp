#include "evc/driver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <future>
#include <numeric>
#include <ostream>

#include "evc/kernels.hpp"

namespace evc {

namespace {

constexpr double kTieRel = 1e-12;

bool strictly_greater(double a, double b) {
  return a > b && std::fabs(a - b) > kTieRel * std::max(std::fabs(a), std::fabs(b));
}

bool ties_or_exceeds(double a, double b) {
  return a >= b || std::fabs(a - b) <= kTieRel * std::max(std::fabs(a), std::fabs(b));
}

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

}  // namespace

bool skip_by_row_sum_bound(const GraphSlice& slice, double lambda_max) {
  double bound = 0.0;
  for (double s : row_sums(slice.local)) bound = std::max(bound, s);
  return bound < lambda_max &&
         !ties_or_exceeds(bound, lambda_max);
}

bool early_discard(double lambda_est, double lambda_max,
                   const SolveOptions& opts) {
  return lambda_est < opts.half_factor * lambda_max;
}

IterationOutcome component_centrality(const GraphSlice& slice,
                                      std::span<const double> incoming,
                                      const GlobalState& state,
                                      const SolveOptions& opts,
                                      double effective_lambda,
                                      bool* from_fallback) {
  const auto& k = kernels::active();
  const std::size_t n = slice.local.vertex_count();
  if (from_fallback) *from_fallback = false;

  const double in_mass = k.l1_norm(incoming.data(), incoming.size());
  if (in_mass < opts.zero_input_tol) {
    // No donated weight: solve the component's own eigenproblem.
    std::vector<double> x0(n, 1.0);
    EigCheck check;
    if (opts.half_discard)
      check = [&](double lambda, int) {
        return early_discard(lambda, effective_lambda, opts);
      };
    IterationOutcome out = power_iteration(slice.local, x0, opts, check);
    if (out.status == SolveStatus::discarded_half) return out;
    if (!ties_or_exceeds(out.lambda_est, effective_lambda)) {
      // Dominated by an earlier component: ranks are zero.
      std::fill(out.vector.begin(), out.vector.end(), 0.0);
      out.status = SolveStatus::zero;
    }
    return out;
  }

  IterationOutcome out =
      series_accumulate(slice.local, incoming, state.lambda_max, opts);
  if (out.status == SolveStatus::diverged) {
    // Terms not decaying: this component's eigenvalue reaches the running
    // maximum, so restart as power iterations seeded with the donated
    // vector and keep its L1 mass.
    if (from_fallback) *from_fallback = true;
    IterationOutcome p = power_iteration(slice.local, incoming, opts);
    const double scale = state.lambda_max > 0.0
                             ? in_mass / state.lambda_max
                             : in_mass;
    k.scale(p.vector.data(), n, scale);
    return p;
  }
  // Series bookkeeping: the donated-mass recurrence carries an overall
  // 1/lambda factor relative to the raw term sum.
  if (state.lambda_max > 0.0)
    k.scale(out.vector.data(), n, 1.0 / state.lambda_max);
  return out;
}

IterationOutcome component_centrality(const GraphSlice& slice,
                                      std::span<const double> incoming,
                                      const GlobalState& state,
                                      const SolveOptions& opts) {
  return component_centrality(slice, incoming, state, opts, state.lambda_max);
}

void propagate_weights(const Decomposition& decomp, ComponentId comp,
                       const std::vector<double>& centrality,
                       std::vector<double>& pending) {
  auto lo = std::lower_bound(
      decomp.condensation_edges.begin(), decomp.condensation_edges.end(), comp,
      [](const CondensationEdge& e, ComponentId c) { return e.source < c; });
  for (; lo != decomp.condensation_edges.end() && lo->source == comp; ++lo)
    for (const BoundaryEdge& e : lo->edges)
      pending[e.dst] += e.weight * centrality[e.src];
}

void zero_out(GlobalState& state, const Decomposition& decomp,
              double new_lambda) {
  if (!(new_lambda > state.lambda_max))
    throw std::invalid_argument("zero_out: new_lambda not a new maximum");
  for (ComponentId c = 0; c < decomp.component_count(); ++c) {
    ComponentOutcome& m = state.per_component[c];
    if (!m.solved || !m.nonzero) continue;
    if (!ties_or_exceeds(m.lambda_est, new_lambda)) {
      for (VertexId v : decomp.components[c].vertices) state.centrality[v] = 0.0;
      m.nonzero = false;
      m.status = SolveStatus::zero;
    }
  }
  state.lambda_max = new_lambda;
}

namespace {

struct DriverContext {
  const SparseGraph& g;
  const SparseGraph& gt;
  const Decomposition& decomp;
  const SolveOptions& opts;
  GlobalState state;
  std::vector<std::vector<ComponentId>> reverse_adj;  // target -> sources
  std::vector<std::int64_t> record_of;                // comp -> record index
  RunReport report;

  DriverContext(const SparseGraph& graph, const SparseGraph& transposed,
                const Decomposition& d, const SolveOptions& o)
      : g(graph), gt(transposed), decomp(d), opts(o) {
    state.centrality.assign(graph.vertex_count(), 0.0);
    state.pending_weights.assign(graph.vertex_count(), 0.0);
    state.per_component.resize(d.component_count());
    reverse_adj.resize(d.component_count());
    for (const CondensationEdge& e : d.condensation_edges)
      reverse_adj[e.target].push_back(e.source);
    record_of.assign(d.component_count(), -1);
  }

  void zero_component(ComponentId c) {
    for (VertexId v : decomp.components[c].vertices) state.centrality[v] = 0.0;
    state.per_component[c].nonzero = false;
    state.per_component[c].status = SolveStatus::zero;
  }

  // A component whose donated series diverged ties (or beats) the running
  // maximum; its transitive upstream donors vanish relative to it.
  bool zero_upstream_of(ComponentId d_comp) {
    bool changed = false;
    std::vector<std::uint8_t> seen(decomp.component_count(), 0);
    std::vector<ComponentId> stack{d_comp};
    seen[d_comp] = 1;
    while (!stack.empty()) {
      ComponentId c = stack.back();
      stack.pop_back();
      for (ComponentId s : reverse_adj[c]) {
        if (seen[s]) continue;
        seen[s] = 1;
        if (state.per_component[s].solved && state.per_component[s].nonzero) {
          zero_component(s);
          changed = true;
        }
        stack.push_back(s);
      }
    }
    return changed;
  }

  void rebuild_pending() {
    std::fill(state.pending_weights.begin(), state.pending_weights.end(), 0.0);
    for (ComponentId c = 0; c < decomp.component_count(); ++c)
      if (state.per_component[c].solved && state.per_component[c].nonzero)
        propagate_weights(decomp, c, state.centrality, state.pending_weights);
  }

  void finish_component(ComponentId c, const IterationOutcome& out) {
    ComponentOutcome& m = state.per_component[c];
    m.lambda_est = out.lambda_est;
    m.iterations = out.iterations;
    m.status = out.status;
    m.hit_max_iter = out.hit_max_iter;
    m.solved = true;
    const auto& verts = decomp.components[c].vertices;
    double mass = 0.0;
    for (std::size_t i = 0; i < verts.size(); ++i) {
      state.centrality[verts[i]] = out.vector.empty() ? 0.0 : out.vector[i];
      mass += state.centrality[verts[i]];
    }
    m.nonzero = mass > 0.0;
  }

  void add_record(std::int64_t unit, bool is_group, std::uint32_t level,
                  std::uint32_t size, int iterations, double lambda,
                  SolveStatus status, bool converged, ComponentId patch_comp) {
    if (patch_comp != static_cast<ComponentId>(-1))
      record_of[patch_comp] = static_cast<std::int64_t>(report.records.size());
    report.records.push_back({unit, is_group, level, size, iterations, lambda,
                              status, converged});
  }

  struct SolveResult {
    IterationOutcome outcome;
    bool from_fallback = false;
  };

  SolveResult solve_multi(ComponentId c, double effective_lambda) {
    const ComponentInfo& info = decomp.components[c];
    GraphSlice slice = induced_subgraph(gt, info.vertices);
    std::vector<double> incoming(info.size);
    for (std::size_t i = 0; i < info.vertices.size(); ++i)
      incoming[i] = state.pending_weights[info.vertices[i]];

    SolveResult r;
    const double in_mass =
        kernels::active().l1_norm(incoming.data(), incoming.size());
    if (in_mass < opts.zero_input_tol && opts.row_sum_skip &&
        skip_by_row_sum_bound(slice, effective_lambda)) {
      double bound = 0.0;
      for (double s : row_sums(slice.local)) bound = std::max(bound, s);
      r.outcome.vector.assign(info.size, 0.0);
      r.outcome.lambda_est = bound;
      r.outcome.iterations = 0;
      r.outcome.status = SolveStatus::skipped_bound;
      return r;
    }
    r.outcome = component_centrality(slice, incoming, state, opts,
                                     effective_lambda, &r.from_fallback);
    return r;
  }

  void run_levels() {
    auto groups = opts.batch_singles
                      ? group_single_vertex_components(decomp, g)
                      : std::vector<SingleVertexGroup>{};
    std::vector<const SingleVertexGroup*> group_at(decomp.max_level + 1,
                                                   nullptr);
    for (const SingleVertexGroup& grp : groups) group_at[grp.level] = &grp;

    for (std::int64_t level = decomp.max_level; level >= 0; --level) {
      const auto& comps = decomp.level_index[level];
      double level_lambda = state.lambda_max;
      std::vector<ComponentId> tie_comps;
      bool any_event = false;
      std::vector<ComponentId> solved_here;

      std::vector<ComponentId> queue;
      for (ComponentId c : comps) {
        if (opts.batch_singles && decomp.components[c].single_vertex) continue;
        queue.push_back(c);
      }

      auto settle = [&](ComponentId c, SolveResult&& r) {
        finish_component(c, r.outcome);
        solved_here.push_back(c);
        const ComponentInfo& info = decomp.components[c];
        add_record(c, false, info.level, info.size, r.outcome.iterations,
                   r.outcome.lambda_est, state.per_component[c].status,
                   !r.outcome.hit_max_iter, c);
        if (state.per_component[c].nonzero)
          level_lambda = std::max(level_lambda, r.outcome.lambda_est);
        if (r.from_fallback &&
            ties_or_exceeds(r.outcome.lambda_est, state.lambda_max))
          tie_comps.push_back(c);
      };

      if (opts.parallel_levels && queue.size() > 1) {
        // Same-level components are data-independent under the frozen
        // pending weights; solve against the pre-level lambda and settle
        // in deterministic order.
        std::vector<std::future<SolveResult>> futures;
        futures.reserve(queue.size());
        for (ComponentId c : queue)
          futures.push_back(std::async(std::launch::async, [this, c] {
            return solve_multi(c, state.lambda_max);
          }));
        for (std::size_t i = 0; i < queue.size(); ++i)
          settle(queue[i], futures[i].get());
      } else {
        for (ComponentId c : queue) settle(c, solve_multi(c, level_lambda));
      }

      if (opts.batch_singles && group_at[level]) {
        const SingleVertexGroup& grp = *group_at[level];
        std::vector<double> weights(grp.members.size());
        for (std::size_t i = 0; i < grp.members.size(); ++i)
          weights[i] = state.pending_weights[grp.members[i]];
        std::vector<double> ranks =
            single_vertex_batch(grp, weights, state.lambda_max);
        double group_lambda = 0.0;
        for (std::size_t i = 0; i < grp.members.size(); ++i) {
          const double a = grp.self_loop_weight[i];
          const bool fallback =
              !(a == 0.0 && state.lambda_max > 0.0) && !(state.lambda_max > a);
          ComponentId c = grp.member_component[i];
          ComponentOutcome& m = state.per_component[c];
          m.solved = true;
          m.iterations = 1;
          if (fallback) {
            m.lambda_est = a;
            m.status = SolveStatus::converged_power;
            state.centrality[grp.members[i]] = ranks[i];
            level_lambda = std::max(level_lambda, a);
            if (weights[i] >= opts.zero_input_tol &&
                ties_or_exceeds(a, state.lambda_max))
              tie_comps.push_back(c);
          } else {
            m.lambda_est = state.lambda_max;
            m.status = SolveStatus::converged_series;
            state.centrality[grp.members[i]] =
                state.lambda_max > 0.0 ? ranks[i] / state.lambda_max : ranks[i];
          }
          m.nonzero = state.centrality[grp.members[i]] > 0.0;
          group_lambda = std::max(group_lambda, m.lambda_est);
          solved_here.push_back(c);
        }
        add_record(grp.member_component.empty()
                       ? 0
                       : *std::min_element(grp.member_component.begin(),
                                           grp.member_component.end()),
                   true, grp.level,
                   static_cast<std::uint32_t>(grp.members.size()), 1,
                   group_lambda, SolveStatus::converged_series, true,
                   static_cast<ComponentId>(-1));
      }

      // Level bookkeeping: raise the maximum (zeroing superseded
      // components), then settle tie fallbacks, then refresh donations.
      if (strictly_greater(level_lambda, state.lambda_max)) {
        zero_out(state, decomp, level_lambda);
        any_event = true;
      }
      for (ComponentId d : tie_comps)
        if (state.per_component[d].nonzero && zero_upstream_of(d))
          any_event = true;

      if (any_event) {
        rebuild_pending();
      } else {
        for (ComponentId c : solved_here)
          if (state.per_component[c].nonzero)
            propagate_weights(decomp, c, state.centrality,
                              state.pending_weights);
      }
    }
  }
};

void patch_records(DriverContext& ctx) {
  for (ComponentId c = 0; c < ctx.decomp.component_count(); ++c) {
    std::int64_t r = ctx.record_of[c];
    if (r < 0) continue;
    ctx.report.records[static_cast<std::size_t>(r)].status =
        ctx.state.per_component[c].status;
  }
  ctx.report.total_iterations = 0;
  for (const UnitRecord& rec : ctx.report.records) {
    ctx.report.total_iterations += rec.iterations;
    ctx.report.all_converged = ctx.report.all_converged && rec.converged;
  }
  ctx.report.lambda_max = ctx.state.lambda_max;
}

}  // namespace

std::pair<std::vector<double>, RunReport> run_componentwise(
    const SparseGraph& g, const SolveOptions& opts) {
  const double t0 = now_seconds();
  SparseGraph gt = transpose(g);
  Decomposition decomp = find_components(g);

  DriverContext ctx(g, gt, decomp, opts);
  const double t1 = now_seconds();
  ctx.run_levels();
  const double t2 = now_seconds();
  patch_records(ctx);

  std::vector<double> result = std::move(ctx.state.centrality);
  const double mass =
      kernels::active().l1_norm(result.data(), result.size());
  if (mass > 0.0)
    kernels::active().scale(result.data(), result.size(), 1.0 / mass);
  else
    ctx.report.all_converged = false;

  ctx.report.solve_seconds = t2 - t1;
  ctx.report.total_seconds = t2 - t0;
  return {std::move(result), std::move(ctx.report)};
}

std::pair<std::vector<double>, RunReport> run_baseline(const SparseGraph& g,
                                                       const SolveOptions& opts) {
  const double t0 = now_seconds();
  SparseGraph gt = transpose(g);
  std::vector<double> x0(g.vertex_count(), 1.0);
  const double t1 = now_seconds();
  IterationOutcome out = power_iteration(gt, x0, opts);
  const double t2 = now_seconds();

  RunReport report;
  report.records.push_back({0, false, 0, g.vertex_count(), out.iterations,
                            out.lambda_est, out.status, !out.hit_max_iter});
  report.total_iterations = out.iterations;
  report.lambda_max = out.lambda_est;
  report.all_converged = !out.hit_max_iter;
  report.solve_seconds = t2 - t1;
  report.total_seconds = t2 - t0;
  return {std::move(out.vector), std::move(report)};
}

std::pair<std::vector<double>, RunReport> run_auto_blocks(
    const SparseGraph& g, const SolveOptions& opts) {
  BlockPartition blocks = detect_blocks(g);
  if (blocks.blocks.size() <= 1) return run_componentwise(g, opts);

  std::vector<std::vector<double>> block_vectors;
  std::vector<double> block_lambdas;
  RunReport combined;
  for (const auto& verts : blocks.blocks) {
    GraphSlice slice = induced_subgraph(g, verts);
    auto [vec, report] = run_componentwise(slice.local, opts);
    block_vectors.push_back(std::move(vec));
    block_lambdas.push_back(report.lambda_max);
    combined.total_iterations += report.total_iterations;
    combined.solve_seconds += report.solve_seconds;
    combined.total_seconds += report.total_seconds;
    combined.all_converged = combined.all_converged && report.all_converged;
    for (UnitRecord& rec : report.records)
      combined.records.push_back(rec);
  }
  combined.lambda_max =
      *std::max_element(block_lambdas.begin(), block_lambdas.end());

  const double top = combined.lambda_max;
  for (double l : block_lambdas) {
    if (std::fabs(l - top) > 1e-9 * std::max(std::fabs(top), 1.0)) {
      // Blocks do not share the dominant eigenvalue; the sequential run on
      // the whole graph legitimately zeroes the weaker blocks.
      return run_componentwise(g, opts);
    }
  }
  return {merge_isolated_blocks(blocks, block_vectors), std::move(combined)};
}

BlockPartition detect_blocks(const SparseGraph& g) {
  const VertexId n = g.vertex_count();
  std::vector<VertexId> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<VertexId> rank(n, 0);

  auto find = [&](VertexId v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  auto unite = [&](VertexId a, VertexId b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank[a] < rank[b]) std::swap(a, b);
    parent[b] = a;
    if (rank[a] == rank[b]) ++rank[a];
  };

  for (VertexId u = 0; u < n; ++u)
    for (VertexId v : g.targets(u)) unite(u, v);

  BlockPartition part;
  part.total = n;
  std::vector<std::int64_t> block_of_root(n, -1);
  for (VertexId v = 0; v < n; ++v) {
    VertexId r = find(v);
    if (block_of_root[r] < 0) {
      block_of_root[r] = static_cast<std::int64_t>(part.blocks.size());
      part.blocks.emplace_back();
    }
    part.blocks[static_cast<std::size_t>(block_of_root[r])].push_back(v);
  }
  return part;  // blocks ordered by smallest vertex; members ascending
}

std::vector<double> merge_isolated_blocks(
    const BlockPartition& blocks,
    const std::vector<std::vector<double>>& block_vectors) {
  if (blocks.blocks.size() != block_vectors.size())
    throw std::invalid_argument("merge_isolated_blocks: vector count mismatch");
  std::uint64_t counted = 0;
  for (const auto& b : blocks.blocks) counted += b.size();
  if (counted != blocks.total)
    throw std::invalid_argument(
        "merge_isolated_blocks: block sizes do not sum to total");

  std::vector<double> global(blocks.total, 0.0);
  const double q = static_cast<double>(blocks.total);
  for (std::size_t i = 0; i < blocks.blocks.size(); ++i) {
    const auto& verts = blocks.blocks[i];
    const auto& x = block_vectors[i];
    if (x.size() != verts.size())
      throw std::invalid_argument(
          "merge_isolated_blocks: block vector size mismatch");
    const double scale = static_cast<double>(verts.size()) / q;
    for (std::size_t j = 0; j < verts.size(); ++j)
      global[verts[j]] = scale * x[j];
  }
  return global;
}

void write_report_csv(std::ostream& out, const RunReport& report) {
  out << "component,level,size,iterations,lambda,status,converged\n";
  char buf[64];
  for (const UnitRecord& r : report.records) {
    std::snprintf(buf, sizeof buf, "%.12g", r.lambda);
    out << r.component << (r.is_group ? "g" : "") << ',' << r.level << ','
        << r.size << ',' << r.iterations << ',' << buf << ','
        << to_string(r.status) << ',' << (r.converged ? 1 : 0) << '\n';
  }
}

}  // namespace evc
