#include "lbg/graph.hpp"

#include <algorithm>

namespace lbg {

const char* to_string(VertexKind k) {
  switch (k) {
    case VertexKind::lattice: return "lattice";
    case VertexKind::subdivision: return "subdivision";
    case VertexKind::clique_port: return "clique_port";
  }
  return "?";
}

const char* to_string(EdgeKind k) {
  switch (k) {
    case EdgeKind::inherited: return "inherited";
    case EdgeKind::clique: return "clique";
    case EdgeKind::inner: return "inner";
    case EdgeKind::shortcut: return "shortcut";
  }
  return "?";
}

const char* to_string(InstanceKind k) {
  switch (k) {
    case InstanceKind::base: return "base";
    case InstanceKind::product: return "product";
    case InstanceKind::spanner: return "spanner";
    case InstanceKind::inner: return "inner";
    case InstanceKind::outer: return "outer";
    case InstanceKind::improved_spanner: return "improved-spanner";
  }
  return "?";
}

InstanceKind instance_kind_from_string(const std::string& s) {
  for (auto k : {InstanceKind::base, InstanceKind::product, InstanceKind::spanner, InstanceKind::inner,
                 InstanceKind::outer, InstanceKind::improved_spanner}) {
    if (s == to_string(k)) return k;
  }
  throw InvalidArgument("unknown construction kind '" + s + "'");
}

LayeredGraph::LayeredGraph(bool directed, std::int32_t max_layer, std::vector<VertexLabel> labels,
                           std::vector<Edge> edges)
    : directed_(directed), max_layer_(max_layer), labels_(std::move(labels)), edges_(std::move(edges)) {
  const auto n = static_cast<std::int64_t>(labels_.size());
  if (n > std::numeric_limits<VertexId>::max() ||
      static_cast<std::int64_t>(edges_.size()) > std::numeric_limits<EdgeId>::max()) {
    throw ResourceLimit("graph exceeds 32-bit vertex/edge id range");
  }
  std::vector<std::uint64_t> keys;
  keys.reserve(edges_.size());
  for (const Edge& e : edges_) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) throw ConstructionError("edge endpoint out of range");
    if (e.u == e.v) throw ConstructionError("self-loop at vertex " + std::to_string(e.u));
    auto a = static_cast<std::uint64_t>(e.u), b = static_cast<std::uint64_t>(e.v);
    if (!directed_ && a > b) std::swap(a, b);
    keys.push_back(a << 32 | b);
  }
  std::sort(keys.begin(), keys.end());
  if (std::adjacent_find(keys.begin(), keys.end()) != keys.end()) throw ConstructionError("duplicate edge");
  build_adjacency();
}

void LayeredGraph::build_adjacency() {
  const std::size_t n = labels_.size();
  out_offsets_.assign(n + 1, 0);
  in_offsets_.assign(directed_ ? n + 1 : 1, 0);
  for (const Edge& e : edges_) {
    ++out_offsets_[e.u + 1];
    if (directed_) ++in_offsets_[e.v + 1];
    else ++out_offsets_[e.v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) out_offsets_[i + 1] += out_offsets_[i];
  if (directed_) {
    for (std::size_t i = 0; i < n; ++i) in_offsets_[i + 1] += in_offsets_[i];
  }
  out_arcs_.assign(out_offsets_[n], Arc{0, 0});
  if (directed_) in_arcs_.assign(in_offsets_[n], Arc{0, 0});
  std::vector<std::int64_t> out_fill(out_offsets_.begin(), out_offsets_.end() - 1);
  std::vector<std::int64_t> in_fill;
  if (directed_) in_fill.assign(in_offsets_.begin(), in_offsets_.end() - 1);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    const auto id = static_cast<EdgeId>(i);
    out_arcs_[out_fill[e.u]++] = Arc{e.v, id};
    if (directed_) in_arcs_[in_fill[e.v]++] = Arc{e.u, id};
    else out_arcs_[out_fill[e.v]++] = Arc{e.u, id};
  }
}

LayeredGraph LayeredGraph::with_extra_edges(std::span<const Edge> extra) const {
  std::vector<Edge> all = edges_;
  all.insert(all.end(), extra.begin(), extra.end());
  return LayeredGraph(directed_, max_layer_, labels_, std::move(all));
}

LayeredGraph LayeredGraph::filtered(std::span<const std::uint8_t> alive) const {
  if (alive.size() != edges_.size()) throw InvalidArgument("edge mask size mismatch");
  std::vector<Edge> kept;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (alive[i]) kept.push_back(edges_[i]);
  }
  return LayeredGraph(directed_, max_layer_, labels_, std::move(kept));
}

std::vector<VertexId> walk_path(const LayeredGraph& g, VertexId source, std::span<const EdgeId> path) {
  std::vector<VertexId> verts{source};
  VertexId cur = source;
  for (EdgeId id : path) {
    if (id < 0 || id >= g.edge_count()) throw InvalidArgument("path edge id " + std::to_string(id) + " out of range");
    const Edge& e = g.edge(id);
    if (e.u == cur) cur = e.v;
    else if (!g.directed() && e.v == cur) cur = e.u;
    else throw InvalidArgument("path edge " + std::to_string(id) + " is not incident to vertex " + std::to_string(cur));
    verts.push_back(cur);
  }
  return verts;
}

VertexId find_lattice_vertex(const LayeredGraph& g, std::int32_t layer, std::span<const std::int32_t> x,
                             std::span<const std::int32_t> y) {
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const VertexLabel& l = g.label(v);
    if (l.kind != VertexKind::lattice || l.layer != layer) continue;
    if (std::equal(l.x.begin(), l.x.end(), x.begin(), x.end()) &&
        std::equal(l.y.begin(), l.y.end(), y.begin(), y.end())) {
      return v;
    }
  }
  return -1;
}

Bfs::Bfs(const LayeredGraph& g)
    : g_(&g), dist_(g.vertex_count(), kUnreachable), count_(g.vertex_count(), 0) {}

void Bfs::run(VertexId source, const EdgeMask* mask, bool count_paths, std::int32_t stop_depth) {
  for (VertexId v : touched_) {
    dist_[v] = kUnreachable;
    count_[v] = 0;
  }
  touched_.clear();
  const bool masked = mask != nullptr && !mask->empty();
  dist_[source] = 0;
  count_[source] = 1;
  touched_.push_back(source);
  // touched_ doubles as the FIFO queue.
  for (std::size_t head = 0; head < touched_.size(); ++head) {
    const VertexId u = touched_[head];
    const std::int32_t du = dist_[u];
    if (du >= stop_depth) continue;
    for (const Arc& a : g_->out(u)) {
      if (masked && !(*mask)[a.edge]) continue;
      std::int32_t& dv = dist_[a.to];
      if (dv == kUnreachable) {
        dv = du + 1;
        count_[a.to] = count_[u];
        touched_.push_back(a.to);
      } else if (count_paths && dv == du + 1) {
        count_[a.to] = static_cast<std::uint8_t>(std::min(2, count_[a.to] + count_[u]));
      }
    }
  }
}

}  // namespace lbg
