#pragma once

// Core graph container shared by every construction: a layered graph whose
// vertices carry provenance labels that survive all transforms, plus the
// critical pair sets with their canonical witness paths.

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "lbg/errors.hpp"

namespace lbg {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;

enum class VertexKind : std::uint8_t { lattice, subdivision, clique_port };
enum class EdgeKind : std::uint8_t { inherited, clique, inner, shortcut };

const char* to_string(VertexKind k);
const char* to_string(EdgeKind k);

struct VertexLabel {
  VertexKind kind = VertexKind::lattice;
  std::int32_t layer = 0;
  // First coordinate block (base graphs, product x, outer graph a).
  std::vector<std::int32_t> x;
  // Second block (product y, inner-copy coordinates). Empty for base graphs.
  std::vector<std::int32_t> y;
  // Subdivision vertex: id of the subdivided edge. Clique port or inner-copy
  // vertex: id of the replaced vertex. All ids refer to the graph the
  // transform consumed. -1 for untransformed lattice vertices.
  std::int64_t provenance = -1;
  // Clique port: port index. Subdivision vertex: position along the edge.
  // Inner-copy vertex: vertex id inside the inner graph.
  std::int32_t index = -1;

  bool operator==(const VertexLabel&) const = default;
};

struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  EdgeKind kind = EdgeKind::inherited;
  // Geometric step identity: which factor the step moves in (0 or 1) and the
  // vector's position in that factor's canonical corner order. Preserved by
  // subdivision; -1 when not a lattice step.
  std::int8_t block = -1;
  std::int32_t step = -1;

  bool operator==(const Edge&) const = default;
};

struct Arc {
  VertexId to;
  EdgeId edge;
};

// Immutable after construction. For directed graphs out() and in() differ;
// undirected graphs expose every incident edge through both.
class LayeredGraph {
 public:
  LayeredGraph() = default;
  // Validates endpoints, self-loops and duplicate edges.
  LayeredGraph(bool directed, std::int32_t max_layer, std::vector<VertexLabel> labels,
               std::vector<Edge> edges);

  bool directed() const { return directed_; }
  std::int32_t max_layer() const { return max_layer_; }
  std::int64_t vertex_count() const { return static_cast<std::int64_t>(labels_.size()); }
  std::int64_t edge_count() const { return static_cast<std::int64_t>(edges_.size()); }

  const VertexLabel& label(VertexId v) const { return labels_[v]; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  const std::vector<VertexLabel>& labels() const { return labels_; }
  const std::vector<Edge>& edges() const { return edges_; }

  std::span<const Arc> out(VertexId v) const {
    return {out_arcs_.data() + out_offsets_[v], out_arcs_.data() + out_offsets_[v + 1]};
  }
  std::span<const Arc> in(VertexId v) const {
    if (!directed_) return out(v);
    return {in_arcs_.data() + in_offsets_[v], in_arcs_.data() + in_offsets_[v + 1]};
  }
  std::size_t degree(VertexId v) const { return directed_ ? out(v).size() + in(v).size() : out(v).size(); }

  // Same vertices and edges plus `extra` appended (ids continue after the
  // existing edges).
  LayeredGraph with_extra_edges(std::span<const Edge> extra) const;
  // Same vertices; only edges with alive[e] != 0 kept, renumbered densely.
  LayeredGraph filtered(std::span<const std::uint8_t> alive) const;

 private:
  void build_adjacency();

  bool directed_ = true;
  std::int32_t max_layer_ = 0;
  std::vector<VertexLabel> labels_;
  std::vector<Edge> edges_;
  std::vector<std::int64_t> out_offsets_{0};
  std::vector<Arc> out_arcs_;
  std::vector<std::int64_t> in_offsets_{0};
  std::vector<Arc> in_arcs_;
};

struct CriticalPair {
  VertexId source = 0;
  VertexId target = 0;
  // Witness vector indices: v in the first corner set, w in the second
  // (product constructions only, else -1).
  std::int32_t v = -1;
  std::int32_t w = -1;
  std::vector<EdgeId> path;
  std::int64_t expected_length = 0;

  bool operator==(const CriticalPair&) const = default;
};

enum class InstanceKind : std::uint8_t { base, product, spanner, inner, outer, improved_spanner };

const char* to_string(InstanceKind k);
InstanceKind instance_kind_from_string(const std::string& s);

struct PairSet {
  InstanceKind kind = InstanceKind::base;
  std::vector<CriticalPair> pairs;

  std::size_t size() const { return pairs.size(); }
};

struct Instance {
  LayeredGraph graph;
  PairSet pairs;
};

// Vertex sequence of `path` walked from `source`. Throws InvalidArgument if
// an edge is not incident to the current vertex (or is traversed against its
// direction in a directed graph).
std::vector<VertexId> walk_path(const LayeredGraph& g, VertexId source, std::span<const EdgeId> path);

// Linear scan for a lattice vertex by layer and coordinates. Test helper.
VertexId find_lattice_vertex(const LayeredGraph& g, std::int32_t layer, std::span<const std::int32_t> x,
                             std::span<const std::int32_t> y = {});

// Per-edge alive flags; empty means every edge is present.
using EdgeMask = std::vector<std::uint8_t>;

inline constexpr std::int32_t kUnreachable = -1;

// Reusable breadth-first search over unit-weight edges with optional edge
// mask and saturating (0, 1, 2+) shortest-path counts. Directed graphs follow
// out-arcs only, which on the layered DAGs is the forward layer sweep.
class Bfs {
 public:
  explicit Bfs(const LayeredGraph& g);

  // `stop_depth` bounds exploration: vertices farther than it stay unreached.
  void run(VertexId source, const EdgeMask* mask = nullptr, bool count_paths = false,
           std::int32_t stop_depth = std::numeric_limits<std::int32_t>::max());

  std::int32_t dist(VertexId v) const { return dist_[v]; }
  // Number of shortest paths saturated at 2; only valid with count_paths.
  std::uint8_t paths(VertexId v) const { return count_[v]; }
  std::span<const VertexId> reached() const { return touched_; }

 private:
  const LayeredGraph* g_;
  std::vector<std::int32_t> dist_;
  std::vector<std::uint8_t> count_;
  std::vector<VertexId> touched_;
};

}  // namespace lbg
