#include "lbg/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "internal.hpp"

namespace lbg {

Instance subdivide(const Instance& in, int t) {
  if (t < 1) throw InvalidArgument("subdivision factor t must be >= 1");
  if (t == 1) return in;
  const LayeredGraph& g = in.graph;

  std::vector<VertexLabel> labels = g.labels();
  std::vector<Edge> edges;
  std::vector<EdgeId> first(g.edge_count());
  auto next_vertex = static_cast<VertexId>(g.vertex_count());
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edge(id);
    first[id] = static_cast<EdgeId>(edges.size());
    if (e.kind != EdgeKind::inherited) {
      edges.push_back(e);
      continue;
    }
    const std::int32_t layer = g.label(e.u).layer;
    VertexId prev = e.u;
    for (int j = 1; j < t; ++j) {
      labels.push_back(VertexLabel{VertexKind::subdivision, layer, {}, {}, id, j});
      edges.push_back(Edge{prev, next_vertex, e.kind, e.block, e.step});
      prev = next_vertex++;
    }
    edges.push_back(Edge{prev, e.v, e.kind, e.block, e.step});
  }

  PairSet pairs{in.pairs.kind, {}};
  pairs.pairs.reserve(in.pairs.size());
  for (const CriticalPair& cp : in.pairs.pairs) {
    CriticalPair out = cp;
    out.path.clear();
    VertexId cur = cp.source;
    for (EdgeId id : cp.path) {
      const Edge& e = g.edge(id);
      const bool forward = e.u == cur;
      if (!forward && (g.directed() || e.v != cur)) throw InvalidArgument("canonical path is not a walk");
      cur = forward ? e.v : e.u;
      if (e.kind != EdgeKind::inherited) {
        out.path.push_back(first[id]);
        continue;
      }
      out.expected_length += t - 1;
      for (int j = 0; j < t; ++j) out.path.push_back(first[id] + (forward ? j : t - 1 - j));
    }
    pairs.pairs.push_back(std::move(out));
  }
  return Instance{LayeredGraph(g.directed(), g.max_layer(), std::move(labels), std::move(edges)), std::move(pairs)};
}

CliqueReplaced clique_replace(const Instance& in, const ResourceLimits& limits) {
  const LayeredGraph& g = in.graph;
  CliqueParams cp;
  for (const Edge& e : g.edges()) {
    if (e.block == 0) cp.delta1 = std::max(cp.delta1, e.step + 1);
    if (e.block == 1) cp.delta2 = std::max(cp.delta2, e.step + 1);
  }
  if (cp.delta1 < 1 || cp.delta2 < 1) throw InvalidArgument("clique replacement needs a product graph");
  if (cp.delta1 < cp.delta2) throw InvalidArgument("clique replacement needs delta1 >= delta2");
  const int ports = cp.delta1 + cp.delta2;
  const std::int64_t clique_edges = static_cast<std::int64_t>(cp.delta1) * cp.delta2;

  auto replaced = [&](VertexId v) {
    const VertexLabel& l = g.label(v);
    return l.kind == VertexKind::lattice && l.layer > 0 && l.layer < g.max_layer();
  };

  std::int64_t n = 0, m = g.edge_count();
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (replaced(v)) {
      n += ports;
      m += clique_edges;
    } else {
      ++n;
    }
  }
  detail::check_size(n, m, limits, "clique replacement");

  std::vector<VertexId> base(g.vertex_count());
  std::vector<VertexLabel> labels;
  labels.reserve(n);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    base[v] = static_cast<VertexId>(labels.size());
    const VertexLabel& l = g.label(v);
    if (!replaced(v)) {
      labels.push_back(l);
      continue;
    }
    std::vector<std::uint8_t> seen(ports, 0);
    auto claim = [&](const Arc& a) {
      const Edge& e = g.edge(a.edge);
      const int limit = e.block == 0 ? cp.delta1 : cp.delta2;
      if ((e.block != 0 && e.block != 1) || e.step < 0 || e.step >= limit) {
        throw ConstructionError("vertex " + std::to_string(v) + " has an edge without step identity");
      }
      if (seen[e.block == 0 ? e.step : cp.delta1 + e.step]++) {
        throw ConstructionError("vertex " + std::to_string(v) + " repeats a step direction");
      }
    };
    for (const Arc& a : g.out(v)) claim(a);
    if (g.directed()) {
      for (const Arc& a : g.in(v)) claim(a);
    }
    for (int p = 0; p < ports; ++p) {
      labels.push_back(VertexLabel{VertexKind::clique_port, l.layer, l.x, l.y, v, p});
    }
  }

  auto port = [&](VertexId v, const Edge& e) {
    return base[v] + (e.block == 0 ? e.step : cp.delta1 + e.step);
  };
  auto endpoint = [&](VertexId v, const Edge& e) { return replaced(v) ? port(v, e) : base[v]; };

  std::vector<Edge> edges;
  edges.reserve(m);
  for (const Edge& e : g.edges()) edges.push_back(Edge{endpoint(e.u, e), endpoint(e.v, e), e.kind, e.block, e.step});
  std::vector<EdgeId> clique_base(g.vertex_count(), -1);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (!replaced(v)) continue;
    clique_base[v] = static_cast<EdgeId>(edges.size());
    for (int s1 = 0; s1 < cp.delta1; ++s1) {
      for (int s2 = 0; s2 < cp.delta2; ++s2) {
        edges.push_back(Edge{base[v] + s1, base[v] + cp.delta1 + s2, EdgeKind::clique, -1, -1});
      }
    }
  }

  PairSet pairs{in.pairs.kind, {}};
  pairs.pairs.reserve(in.pairs.size());
  for (const CriticalPair& old : in.pairs.pairs) {
    CriticalPair out = old;
    out.source = base[old.source];
    out.target = base[old.target];
    if (replaced(old.source) || replaced(old.target)) throw InvalidArgument("pair endpoint lies on an interior layer");
    out.path.clear();
    const auto verts = walk_path(g, old.source, old.path);
    for (std::size_t k = 0; k < old.path.size(); ++k) {
      out.path.push_back(old.path[k]);
      if (k + 1 == old.path.size() || !replaced(verts[k + 1])) continue;
      const Edge& a = g.edge(old.path[k]);
      const Edge& b = g.edge(old.path[k + 1]);
      if (a.block == b.block) throw ConstructionError("canonical path does not alternate at a clique vertex");
      const Edge& e1 = a.block == 0 ? a : b;
      const Edge& e2 = a.block == 0 ? b : a;
      out.path.push_back(clique_base[verts[k + 1]] + e1.step * cp.delta2 + e2.step);
      ++out.expected_length;
    }
    pairs.pairs.push_back(std::move(out));
  }
  return CliqueReplaced{
      Instance{LayeredGraph(g.directed(), g.max_layer(), std::move(labels), std::move(edges)), std::move(pairs)}, cp};
}

SpannerInstance build_spanner_instance(int d1, int r1, int d2, int r2, int D, int t, const ResourceLimits& limits) {
  const BaseGraphParams p1{d1, r1, D, Orientation::undirected};
  const BaseGraphParams p2{d2, r2, D, Orientation::undirected};
  p1.validate();
  p2.validate();
  if (t < 1) throw InvalidArgument("subdivision factor t must be >= 1");
  const auto v1 = hull_corners(BallSpec::of_radius(d1, r1), limits).size();
  const auto v2 = hull_corners(BallSpec::of_radius(d2, r2), limits).size();
  if (v1 < v2) throw InvalidArgument("spanner instance needs |V(d1,r1)| >= |V(d2,r2)|");

  Instance product = alternation_product(p1, p2, Orientation::undirected, limits);
  const std::int64_t inherited = product.graph.edge_count();
  detail::check_size(product.graph.vertex_count() + inherited * (t - 1), inherited * t, limits,
                     "subdivided product");
  Instance sub = subdivide(product, t);
  CliqueReplaced cr = clique_replace(sub, limits);
  cr.instance.pairs.kind = InstanceKind::spanner;
  return SpannerInstance{std::move(cr.instance), cr.clique, p1, p2, t};
}

namespace {

std::int64_t required_corner_count(int c) {
  // Smallest k with k * pi >= 4c.
  auto k = static_cast<std::int64_t>(std::ceil(4.0L * c / std::numbers::pi_v<long double>));
  while (static_cast<long double>(k - 1) * std::numbers::pi_v<long double> >= 4.0L * c) --k;
  return std::max<std::int64_t>(k, 1);
}

}  // namespace

InnerGraph build_inner_graph(int c, int L, int q, const ResourceLimits& limits) {
  if (c < 1) throw InvalidArgument("inner density c must be >= 1");
  if (L < 2) throw InvalidArgument("outer scale L must be >= 2");
  if (q < 0) throw InvalidArgument("port count q must be >= 0");
  InnerGraph ig;
  ig.c = c;
  ig.L = L;
  ig.required_corners = required_corner_count(c);
  ig.step_radius = min_radius_with_corners(2, ig.required_corners, 64, limits);
  const VectorSet steps = hull_corners(BallSpec::of_radius(2, ig.step_radius), limits);
  ig.q = q == 0 ? static_cast<int>(steps.size()) : q;
  ig.base_radius = static_cast<std::int64_t>(L) * c * ig.step_radius;

  const std::int64_t depth = static_cast<std::int64_t>(L) * c;
  std::vector<std::int64_t> radii;
  for (std::int64_t k = 0; k <= depth; ++k) {
    const std::int64_t rad = ig.base_radius + k * ig.step_radius;
    radii.push_back(rad * rad);
  }
  Instance full = build_layered_lattice(2, radii, steps, Orientation::undirected, InstanceKind::inner, limits);
  ig.lattice_pair_count = static_cast<std::int64_t>(full.pairs.size());

  // Pairs arrive ordered by (source, vector), so pair (a, s) sits at a*|V| + s.
  const std::size_t nv = steps.size();
  const std::size_t sources = full.pairs.size() / nv;
  std::vector<std::uint8_t> used_source(sources, 0);
  std::vector<std::uint8_t> used_target(full.graph.vertex_count(), 0);
  std::vector<CriticalPair> chosen;
  for (int i = 0; i < ig.q; ++i) {
    const std::size_t s = static_cast<std::size_t>(i) % nv;
    bool found = false;
    for (std::size_t a = 0; a < sources && !found; ++a) {
      const CriticalPair& cand = full.pairs.pairs[a * nv + s];
      if (used_source[a] || used_target[cand.target]) continue;
      used_source[a] = 1;
      used_target[cand.target] = 1;
      chosen.push_back(cand);
      found = true;
    }
    if (!found) {
      throw Infeasible("inner graph cannot host " + std::to_string(ig.q) + " ports with distinct sources and sinks");
    }
  }
  full.pairs.pairs = std::move(chosen);
  ig.instance = std::move(full);
  return ig;
}

OuterGraph build_outer_graph(int q, int L, const ResourceLimits& limits) {
  if (q < 1) throw InvalidArgument("outer vector count q must be >= 1");
  if (L < 1) throw InvalidArgument("outer scale L must be >= 1");
  OuterGraph og;
  og.q = q;
  og.L = L;
  og.radius = min_radius_with_corners(3, q, 64, limits);
  og.subset = hull_corners(BallSpec::of_radius(3, og.radius), limits);
  og.subset.vectors.resize(q);
  std::vector<std::int64_t> radii;
  for (std::int64_t k = 0; k <= L; ++k) {
    const std::int64_t rad = (L + k) * og.radius;
    radii.push_back(rad * rad);
  }
  og.instance = build_layered_lattice(3, radii, og.subset, Orientation::undirected, InstanceKind::outer, limits);
  return og;
}

Instance substitute_inner(const OuterGraph& outer, const InnerGraph& inner, int L, const ResourceLimits& limits) {
  if (L < 2 || L % 2 != 0) throw InvalidArgument("substitution needs an even L >= 2");
  const LayeredGraph& og = outer.instance.graph;
  const LayeredGraph& ig = inner.instance.graph;
  if (og.max_layer() != L) throw InvalidArgument("outer graph layer count does not match L");
  if (static_cast<std::size_t>(inner.q) != outer.subset.size() || inner.instance.pairs.size() != outer.subset.size()) {
    throw InvalidArgument("inner port count " + std::to_string(inner.instance.pairs.size()) +
                          " does not match outer vector count " + std::to_string(outer.subset.size()));
  }
  const auto& ports = inner.instance.pairs.pairs;
  auto interior = [&](VertexId v) { return og.label(v).layer > 0 && og.label(v).layer < L; };

  std::int64_t n = 0, m = og.edge_count();
  for (VertexId v = 0; v < og.vertex_count(); ++v) {
    if (interior(v)) {
      n += ig.vertex_count();
      m += ig.edge_count();
    } else {
      ++n;
    }
  }
  const std::int64_t half = L / 2;
  detail::check_size(n + og.edge_count() * (half - 1), m + og.edge_count() * (half - 1), limits,
                     "substitution product");

  std::vector<VertexId> base(og.vertex_count());
  std::vector<VertexLabel> labels;
  labels.reserve(n);
  for (VertexId v = 0; v < og.vertex_count(); ++v) {
    base[v] = static_cast<VertexId>(labels.size());
    const VertexLabel& l = og.label(v);
    if (!interior(v)) {
      labels.push_back(l);
      continue;
    }
    for (VertexId j = 0; j < ig.vertex_count(); ++j) {
      labels.push_back(VertexLabel{VertexKind::lattice, l.layer, l.x, ig.label(j).x, v, j});
    }
  }

  std::vector<Edge> edges;
  edges.reserve(m);
  for (const Edge& e : og.edges()) {
    const CriticalPair& port = ports[e.step];
    const VertexId u = interior(e.u) ? base[e.u] + port.target : base[e.u];
    const VertexId w = interior(e.v) ? base[e.v] + port.source : base[e.v];
    edges.push_back(Edge{u, w, EdgeKind::inherited, e.block, e.step});
  }
  std::vector<EdgeId> inner_base(og.vertex_count(), -1);
  for (VertexId v = 0; v < og.vertex_count(); ++v) {
    if (!interior(v)) continue;
    inner_base[v] = static_cast<EdgeId>(edges.size());
    for (const Edge& e : ig.edges()) edges.push_back(Edge{base[v] + e.u, base[v] + e.v, EdgeKind::inner, -1, -1});
  }

  PairSet pairs{InstanceKind::improved_spanner, {}};
  pairs.pairs.reserve(outer.instance.pairs.size());
  for (const CriticalPair& old : outer.instance.pairs.pairs) {
    CriticalPair out = old;
    out.source = base[old.source];
    out.target = base[old.target];
    out.path.clear();
    const auto verts = walk_path(og, old.source, old.path);
    const CriticalPair& port = ports[old.v];
    for (std::size_t k = 0; k < old.path.size(); ++k) {
      out.path.push_back(old.path[k]);
      if (k + 1 == old.path.size()) continue;
      for (EdgeId ie : port.path) out.path.push_back(inner_base[verts[k + 1]] + ie);
      out.expected_length += port.expected_length;
    }
    pairs.pairs.push_back(std::move(out));
  }

  Instance composite{LayeredGraph(og.directed(), og.max_layer(), std::move(labels), std::move(edges)),
                     std::move(pairs)};
  return subdivide(composite, static_cast<int>(half));
}

ImprovedSpanner build_improved_spanner(const InnerOuterParams& params, const ResourceLimits& limits) {
  if (params.L < 2 || params.L % 2 != 0) throw InvalidArgument("L must be even and >= 2");
  ImprovedSpanner out;
  out.inner = build_inner_graph(params.c, params.L, params.q, limits);
  out.outer = build_outer_graph(out.inner.q, params.L, limits);
  out.instance = substitute_inner(out.outer, out.inner, params.L, limits);
  const std::int64_t n = out.instance.graph.vertex_count();
  const auto p = static_cast<std::int64_t>(out.instance.pairs.size());
  const std::int64_t denom = static_cast<std::int64_t>(params.L) * (params.L - 1) * p;
  out.lambda = denom == 0 ? 0 : (2 * n + denom - 1) / denom;
  return out;
}

}  // namespace lbg
