#include "lbg/graphs.hpp"

#include <algorithm>

#include "internal.hpp"

namespace lbg {

namespace detail {

BallIndex::BallIndex(const BallSpec& spec, const ResourceLimits& limits)
    : d_(spec.d), m_(isqrt(spec.radius_sq)), points_(enumerate_ball(spec, limits)) {
  std::int64_t box = 1;
  for (int i = 0; i < d_; ++i) box *= 2 * m_ + 1;
  slot_.assign(static_cast<std::size_t>(box), -1);
  for (std::size_t i = 0; i < points_.size(); ++i) slot_[offset(points_[i])] = static_cast<std::int32_t>(i);
}

std::int64_t BallIndex::offset(const LatticePoint& p) const {
  std::int64_t off = 0;
  for (Coord c : p.coords) off = off * (2 * m_ + 1) + (c + m_);
  return off;
}

std::int32_t BallIndex::find(const LatticePoint& p) const {
  for (Coord c : p.coords) {
    if (c < -m_ || c > m_) return -1;
  }
  return slot_[offset(p)];
}

std::vector<std::int32_t> narrow(const LatticePoint& p) {
  std::vector<std::int32_t> out(p.coords.size());
  std::transform(p.coords.begin(), p.coords.end(), out.begin(), [](Coord c) { return static_cast<std::int32_t>(c); });
  return out;
}

void check_size(std::int64_t n, std::int64_t m, const ResourceLimits& limits, const std::string& what) {
  if (n > limits.max_vertices || m > limits.max_edges) {
    throw ResourceLimit(what + ": projected " + std::to_string(n) + " vertices / " + std::to_string(m) +
                        " edges exceeds budget (" + std::to_string(limits.max_vertices) + " / " +
                        std::to_string(limits.max_edges) + ")");
  }
}

}  // namespace detail

void BaseGraphParams::validate() const {
  if (d < 2 || d > 3) throw InvalidArgument("base graph dimension d must be 2 or 3");
  if (r < 1) throw InvalidArgument("base graph radius r must be >= 1");
  if (D < 1) throw InvalidArgument("base graph path length D must be >= 1");
}

Instance build_layered_lattice(int d, std::span<const std::int64_t> layer_radius_sq, const VectorSet& steps,
                               Orientation orientation, InstanceKind kind, const ResourceLimits& limits) {
  if (layer_radius_sq.size() < 2) throw InvalidArgument("layered lattice needs at least two layers");
  if (steps.d != d || steps.vectors.empty()) throw InvalidArgument("step vectors must be non-empty and match d");
  const auto top = static_cast<std::int32_t>(layer_radius_sq.size() - 1);
  const auto deg = static_cast<std::int64_t>(steps.size());

  std::int64_t n = 0, m = 0;
  for (std::int32_t k = 0; k <= top; ++k) {
    const std::int64_t size = ball_size({d, layer_radius_sq[k]}, limits);
    n += size;
    if (k < top) m += size * deg;
  }
  detail::check_size(n, m, limits, "layered lattice graph");

  std::vector<detail::BallIndex> layers;
  layers.reserve(top + 1);
  for (std::int32_t k = 0; k <= top; ++k) layers.emplace_back(BallSpec{d, layer_radius_sq[k]}, limits);

  std::vector<std::int64_t> first(top + 2, 0);
  for (std::int32_t k = 0; k <= top; ++k) first[k + 1] = first[k] + static_cast<std::int64_t>(layers[k].size());

  std::vector<VertexLabel> labels;
  labels.reserve(n);
  for (std::int32_t k = 0; k <= top; ++k) {
    for (const auto& p : layers[k].points()) {
      labels.push_back(VertexLabel{VertexKind::lattice, k, detail::narrow(p), {}, -1, -1});
    }
  }

  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::int32_t k = 0; k < top; ++k) {
    const auto& pts = layers[k].points();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t s = 0; s < steps.size(); ++s) {
        const std::int32_t j = layers[k + 1].find(pts[i] + steps.vectors[s]);
        if (j < 0) throw ConstructionError("step leaves the next layer's ball; radii must grow by |v|");
        edges.push_back(Edge{static_cast<VertexId>(first[k] + i), static_cast<VertexId>(first[k + 1] + j),
                             EdgeKind::inherited, 0, static_cast<std::int32_t>(s)});
      }
    }
  }

  PairSet pairs{kind, {}};
  pairs.pairs.reserve(layers[0].size() * steps.size());
  for (std::size_t i = 0; i < layers[0].size(); ++i) {
    for (std::size_t s = 0; s < steps.size(); ++s) {
      CriticalPair cp;
      cp.source = static_cast<VertexId>(i);
      cp.v = static_cast<std::int32_t>(s);
      cp.expected_length = top;
      VertexId cur = cp.source;
      for (std::int32_t k = 0; k < top; ++k) {
        // Non-top vertices come first and each owns |steps| consecutive edges.
        const auto e = static_cast<EdgeId>(cur * deg + static_cast<std::int64_t>(s));
        cp.path.push_back(e);
        cur = edges[e].v;
      }
      cp.target = cur;
      pairs.pairs.push_back(std::move(cp));
    }
  }

  return Instance{LayeredGraph(orientation == Orientation::directed, top, std::move(labels), std::move(edges)),
                  std::move(pairs)};
}

Instance build_base(const BaseGraphParams& params, const ResourceLimits& limits) {
  params.validate();
  const VectorSet steps = hull_corners(BallSpec::of_radius(params.d, params.r), limits);
  std::vector<std::int64_t> radii;
  for (int k = 0; k <= params.D; ++k) {
    const std::int64_t rad = params.R() + static_cast<std::int64_t>(k) * params.r;
    radii.push_back(rad * rad);
  }
  return build_layered_lattice(params.d, radii, steps, params.orientation, InstanceKind::base, limits);
}

Instance alternation_product(const BaseGraphParams& g1, const BaseGraphParams& g2, Orientation orientation,
                             const ResourceLimits& limits) {
  g1.validate();
  g2.validate();
  if (g1.D != g2.D) throw InvalidArgument("alternation product needs factors with equal D");
  const int D = g1.D;
  const std::int32_t top = 2 * D;
  const VectorSet v1 = hull_corners(BallSpec::of_radius(g1.d, g1.r), limits);
  const VectorSet v2 = hull_corners(BallSpec::of_radius(g2.d, g2.r), limits);

  auto xspec = [&](std::int32_t i) {
    const std::int64_t rad = g1.R() + static_cast<std::int64_t>((i + 1) / 2) * g1.r;
    return BallSpec{g1.d, rad * rad};
  };
  auto yspec = [&](std::int32_t i) {
    const std::int64_t rad = g2.R() + static_cast<std::int64_t>(i / 2) * g2.r;
    return BallSpec{g2.d, rad * rad};
  };

  std::int64_t n = 0, m = 0;
  for (std::int32_t i = 0; i <= top; ++i) {
    const std::int64_t size = ball_size(xspec(i), limits) * ball_size(yspec(i), limits);
    n += size;
    if (i < top) m += size * static_cast<std::int64_t>(i % 2 == 0 ? v1.size() : v2.size());
  }
  detail::check_size(n, m, limits, "alternation product");

  std::vector<detail::BallIndex> xs, ys;
  for (std::int32_t i = 0; i <= top; ++i) {
    xs.emplace_back(xspec(i), limits);
    ys.emplace_back(yspec(i), limits);
  }
  std::vector<std::int64_t> first(top + 2, 0);
  for (std::int32_t i = 0; i <= top; ++i) {
    first[i + 1] = first[i] + static_cast<std::int64_t>(xs[i].size() * ys[i].size());
  }
  auto vertex_id = [&](std::int32_t i, std::int32_t ix, std::int32_t iy) {
    return static_cast<VertexId>(first[i] + static_cast<std::int64_t>(ix) * ys[i].size() + iy);
  };

  std::vector<VertexLabel> labels;
  labels.reserve(n);
  for (std::int32_t i = 0; i <= top; ++i) {
    for (const auto& x : xs[i].points()) {
      for (const auto& y : ys[i].points()) {
        labels.push_back(VertexLabel{VertexKind::lattice, i, detail::narrow(x), detail::narrow(y), -1, -1});
      }
    }
  }

  std::vector<Edge> edges;
  edges.reserve(m);
  std::vector<EdgeId> first_edge(n, -1);
  for (std::int32_t i = 0; i < top; ++i) {
    const bool even = i % 2 == 0;
    const VectorSet& vs = even ? v1 : v2;
    for (std::size_t ix = 0; ix < xs[i].size(); ++ix) {
      for (std::size_t iy = 0; iy < ys[i].size(); ++iy) {
        const VertexId u = vertex_id(i, static_cast<std::int32_t>(ix), static_cast<std::int32_t>(iy));
        first_edge[u] = static_cast<EdgeId>(edges.size());
        for (std::size_t s = 0; s < vs.size(); ++s) {
          std::int32_t jx, jy;
          if (even) {
            jx = xs[i + 1].find(xs[i].points()[ix] + vs.vectors[s]);
            jy = ys[i + 1].find(ys[i].points()[iy]);
          } else {
            jx = xs[i + 1].find(xs[i].points()[ix]);
            jy = ys[i + 1].find(ys[i].points()[iy] + vs.vectors[s]);
          }
          if (jx < 0 || jy < 0) throw ConstructionError("product step leaves the next layer");
          edges.push_back(Edge{u, vertex_id(i + 1, jx, jy), EdgeKind::inherited,
                               static_cast<std::int8_t>(even ? 0 : 1), static_cast<std::int32_t>(s)});
        }
      }
    }
  }

  PairSet pairs{InstanceKind::product, {}};
  pairs.pairs.reserve(xs[0].size() * ys[0].size() * v1.size() * v2.size());
  for (VertexId src = 0; src < static_cast<VertexId>(first[1]); ++src) {
    for (std::size_t s1 = 0; s1 < v1.size(); ++s1) {
      for (std::size_t s2 = 0; s2 < v2.size(); ++s2) {
        CriticalPair cp;
        cp.source = src;
        cp.v = static_cast<std::int32_t>(s1);
        cp.w = static_cast<std::int32_t>(s2);
        cp.expected_length = top;
        VertexId cur = src;
        for (std::int32_t i = 0; i < top; ++i) {
          const EdgeId e = first_edge[cur] + static_cast<EdgeId>(i % 2 == 0 ? s1 : s2);
          cp.path.push_back(e);
          cur = edges[e].v;
        }
        cp.target = cur;
        pairs.pairs.push_back(std::move(cp));
      }
    }
  }

  return Instance{LayeredGraph(orientation == Orientation::directed, top, std::move(labels), std::move(edges)),
                  std::move(pairs)};
}

std::int64_t transitive_closure_diameter(const LayeredGraph& g) {
  std::int64_t best = 0;
  Bfs bfs(g);
  for (VertexId s = 0; s < g.vertex_count(); ++s) {
    bfs.run(s);
    const auto reached = bfs.reached();
    if (!reached.empty()) best = std::max<std::int64_t>(best, bfs.dist(reached.back()));
  }
  return best;
}

}  // namespace lbg
