#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "evc/graph.hpp"

namespace evc {

using ComponentId = std::uint32_t;

class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct ComponentInfo {
  std::vector<VertexId> vertices;  // sorted ascending
  std::uint32_t size = 0;
  std::uint32_t level = 0;
  bool single_vertex = false;
};

struct BoundaryEdge {
  VertexId src;
  VertexId dst;
  double weight;
};

// Inter-component links, grouped per (source, target) pair with the
// contributing graph edges attached.
struct CondensationEdge {
  ComponentId source;
  ComponentId target;
  std::vector<BoundaryEdge> edges;
};

/// Strongly-connected-component partition plus the condensation DAG.
/// Levels are longest-path distances to a sink: sinks sit at level 0 and
/// every condensation edge goes from a higher level to a strictly lower
/// one, so processing levels top-down walks the block-triangular structure.
struct Decomposition {
  std::vector<ComponentId> comp_of;            // vertex -> component
  std::vector<ComponentInfo> components;
  std::vector<CondensationEdge> condensation_edges;
  std::vector<std::vector<ComponentId>> level_index;  // level -> ids, size desc
  std::uint32_t max_level = 0;

  ComponentId component_count() const {
    return static_cast<ComponentId>(components.size());
  }
};

/// Iterative Tarjan over the stored direction of g. Component ids follow
/// emission order (every component comes after all components it links
/// to), levels and the sorted level index are filled in before returning.
Decomposition find_components(const SparseGraph& g);

// Recomputes levels from the condensation edges; idempotent. Throws
// InternalError if the component graph has a cycle.
void assign_levels(Decomposition& decomp);

// Rebuilds level_index: components per level, largest first, ties by id.
void sort_components(Decomposition& decomp);

struct SingleVertexGroup {
  std::uint32_t level = 0;
  std::vector<VertexId> members;            // ascending vertex id
  std::vector<double> self_loop_weight;     // parallel to members
  std::vector<ComponentId> member_component;
};

// One group per level that has 1-vertex components; levels ascending.
std::vector<SingleVertexGroup> group_single_vertex_components(
    const Decomposition& decomp, const SparseGraph& g);

// Debug dump: `vertex,component,level` rows.
void write_decomposition_csv(std::ostream& out, const Decomposition& decomp);

}  // namespace evc
