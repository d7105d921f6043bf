#include "evc/condensation.hpp"

#include <algorithm>
#include <ostream>

namespace evc {

namespace {

constexpr std::uint32_t kUnvisited = 0xffffffffu;

// Iterative Tarjan; explicit frame stack so recursion depth never tracks n.
struct TarjanState {
  const SparseGraph& g;
  std::vector<std::uint32_t> index;
  std::vector<std::uint32_t> lowlink;
  std::vector<std::uint8_t> on_stack;
  std::vector<VertexId> stack;
  std::vector<ComponentId> comp_of;
  std::uint32_t next_index = 0;
  ComponentId next_comp = 0;

  struct Frame {
    VertexId v;
    std::uint64_t edge;
  };
  std::vector<Frame> frames;

  explicit TarjanState(const SparseGraph& graph)
      : g(graph),
        index(graph.vertex_count(), kUnvisited),
        lowlink(graph.vertex_count(), 0),
        on_stack(graph.vertex_count(), 0),
        comp_of(graph.vertex_count(), kUnvisited) {}

  void run(VertexId root) {
    frames.push_back({root, g.row_offsets()[root]});
    index[root] = lowlink[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;

    while (!frames.empty()) {
      Frame& f = frames.back();
      const VertexId v = f.v;
      const std::uint64_t row_end = g.row_offsets()[v + 1];
      bool descended = false;
      while (f.edge < row_end) {
        const VertexId w = g.column_indices()[f.edge];
        ++f.edge;
        if (index[w] == kUnvisited) {
          index[w] = lowlink[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, g.row_offsets()[w]});
          descended = true;
          break;
        }
        if (on_stack[w]) lowlink[v] = std::min(lowlink[v], index[w]);
      }
      if (descended) continue;

      if (lowlink[v] == index[v]) {
        // v roots a component; pop it.
        while (true) {
          VertexId w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp_of[w] = next_comp;
          if (w == v) break;
        }
        ++next_comp;
      }
      frames.pop_back();
      if (!frames.empty()) {
        VertexId parent = frames.back().v;
        lowlink[parent] = std::min(lowlink[parent], lowlink[v]);
      }
    }
  }
};

}  // namespace

Decomposition find_components(const SparseGraph& g) {
  if (g.vertex_count() == 0)
    throw std::invalid_argument("find_components: empty graph");

  TarjanState t(g);
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (t.index[v] == kUnvisited) t.run(v);

  Decomposition d;
  d.comp_of = std::move(t.comp_of);
  d.components.resize(t.next_comp);
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    d.components[d.comp_of[v]].vertices.push_back(v);
  for (ComponentInfo& c : d.components) {
    // vertices collected in ascending order already; keep the invariant
    // explicit against future changes to the fill loop
    std::sort(c.vertices.begin(), c.vertices.end());
    c.size = static_cast<std::uint32_t>(c.vertices.size());
    c.single_vertex = c.size == 1;
  }

  // Boundary edges, grouped by (source component, target component).
  struct Tagged {
    ComponentId s, t;
    BoundaryEdge e;
  };
  std::vector<Tagged> tagged;
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    auto ts = g.targets(u);
    auto ws = g.edge_weights(u);
    for (std::size_t k = 0; k < ts.size(); ++k) {
      ComponentId cs = d.comp_of[u], ct = d.comp_of[ts[k]];
      if (cs != ct) tagged.push_back({cs, ct, {u, ts[k], ws[k]}});
    }
  }
  std::sort(tagged.begin(), tagged.end(), [](const Tagged& a, const Tagged& b) {
    if (a.s != b.s) return a.s < b.s;
    if (a.t != b.t) return a.t < b.t;
    if (a.e.src != b.e.src) return a.e.src < b.e.src;
    return a.e.dst < b.e.dst;
  });
  for (std::size_t i = 0; i < tagged.size();) {
    CondensationEdge ce{tagged[i].s, tagged[i].t, {}};
    std::size_t j = i;
    while (j < tagged.size() && tagged[j].s == ce.source &&
           tagged[j].t == ce.target)
      ce.edges.push_back(tagged[j++].e);
    d.condensation_edges.push_back(std::move(ce));
    i = j;
  }

  assign_levels(d);
  sort_components(d);
  return d;
}

void assign_levels(Decomposition& d) {
  const ComponentId c = d.component_count();
  std::vector<std::uint32_t> out_degree(c, 0);
  std::vector<std::vector<ComponentId>> sources_of(c);  // reverse adjacency
  for (const CondensationEdge& e : d.condensation_edges) {
    if (e.source == e.target)
      throw InternalError("condensation edge within one component");
    out_degree[e.source]++;
    sources_of[e.target].push_back(e.source);
  }

  // Kahn order over reversed edges: targets settle before their sources,
  // giving longest-path-to-sink in one pass.
  std::vector<ComponentId> ready;
  for (ComponentId i = 0; i < c; ++i)
    if (out_degree[i] == 0) ready.push_back(i);
  std::vector<std::uint32_t> level(c, 0);
  std::size_t processed = 0;
  std::vector<std::uint8_t> done(c, 0);
  while (!ready.empty()) {
    ComponentId v = ready.back();
    ready.pop_back();
    done[v] = 1;
    ++processed;
    for (ComponentId s : sources_of[v]) {
      level[s] = std::max(level[s], level[v] + 1);
      if (--out_degree[s] == 0) ready.push_back(s);
    }
  }
  if (processed != c)
    throw InternalError("cycle among components in condensation");

  d.max_level = 0;
  for (ComponentId i = 0; i < c; ++i) {
    d.components[i].level = level[i];
    d.max_level = std::max(d.max_level, level[i]);
  }
}

void sort_components(Decomposition& d) {
  d.level_index.assign(static_cast<std::size_t>(d.max_level) + 1, {});
  for (ComponentId i = 0; i < d.component_count(); ++i)
    d.level_index[d.components[i].level].push_back(i);
  for (auto& bucket : d.level_index) {
    std::sort(bucket.begin(), bucket.end(), [&](ComponentId a, ComponentId b) {
      if (d.components[a].size != d.components[b].size)
        return d.components[a].size > d.components[b].size;
      return a < b;
    });
  }
}

std::vector<SingleVertexGroup> group_single_vertex_components(
    const Decomposition& d, const SparseGraph& g) {
  std::vector<SingleVertexGroup> groups(static_cast<std::size_t>(d.max_level) +
                                        1);
  for (std::size_t l = 0; l < groups.size(); ++l)
    groups[l].level = static_cast<std::uint32_t>(l);
  for (ComponentId i = 0; i < d.component_count(); ++i) {
    const ComponentInfo& c = d.components[i];
    if (!c.single_vertex) continue;
    SingleVertexGroup& grp = groups[c.level];
    grp.members.push_back(c.vertices[0]);
    grp.self_loop_weight.push_back(g.self_loop_weight(c.vertices[0]));
    grp.member_component.push_back(i);
  }
  std::vector<SingleVertexGroup> nonempty;
  for (SingleVertexGroup& grp : groups) {
    if (grp.members.empty()) continue;
    // comp ids may not follow vertex order; re-sort members ascending
    std::vector<std::size_t> idx(grp.members.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return grp.members[a] < grp.members[b];
    });
    SingleVertexGroup sorted;
    sorted.level = grp.level;
    for (std::size_t i : idx) {
      sorted.members.push_back(grp.members[i]);
      sorted.self_loop_weight.push_back(grp.self_loop_weight[i]);
      sorted.member_component.push_back(grp.member_component[i]);
    }
    nonempty.push_back(std::move(sorted));
  }
  return nonempty;
}

void write_decomposition_csv(std::ostream& out, const Decomposition& d) {
  out << "vertex,component,level\n";
  for (VertexId v = 0; v < d.comp_of.size(); ++v)
    out << v << ',' << d.comp_of[v] << ','
        << d.components[d.comp_of[v]].level << '\n';
}

}  // namespace evc
