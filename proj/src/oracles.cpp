#include "lbg/oracles.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <unordered_set>

#include "internal.hpp"

namespace lbg {

namespace detail {

std::vector<std::pair<VertexId, std::vector<std::size_t>>> group_by_source(const PairSet& pairs) {
  std::vector<std::size_t> order(pairs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return pairs.pairs[a].source < pairs.pairs[b].source; });
  std::vector<std::pair<VertexId, std::vector<std::size_t>>> groups;
  for (std::size_t i : order) {
    const VertexId s = pairs.pairs[i].source;
    if (groups.empty() || groups.back().first != s) groups.push_back({s, {}});
    groups.back().second.push_back(i);
  }
  return groups;
}

}  // namespace detail

namespace {

std::uint64_t edge_key(VertexId u, VertexId v, bool directed) {
  if (!directed && u > v) std::swap(u, v);
  return static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32 | static_cast<std::uint32_t>(v);
}

// Lists of owners per item in compressed form.
struct Incidence {
  std::vector<std::int64_t> offsets;
  std::vector<std::int32_t> owners;

  std::span<const std::int32_t> of(std::size_t item) const {
    return {owners.data() + offsets[item], owners.data() + offsets[item + 1]};
  }
};

Incidence build_incidence(std::size_t items, const std::vector<std::vector<std::int32_t>>& members) {
  Incidence inc;
  inc.offsets.assign(items + 1, 0);
  for (const auto& list : members) {
    for (auto x : list) ++inc.offsets[x + 1];
  }
  for (std::size_t i = 0; i < items; ++i) inc.offsets[i + 1] += inc.offsets[i];
  inc.owners.resize(inc.offsets[items]);
  std::vector<std::int64_t> fill(inc.offsets.begin(), inc.offsets.end() - 1);
  for (std::size_t p = 0; p < members.size(); ++p) {
    for (auto x : members[p]) inc.owners[fill[x]++] = static_cast<std::int32_t>(p);
  }
  return inc;
}

std::vector<std::int32_t> sorted_unique(std::vector<std::int32_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Counts, for pair p, how many items it shares with every later pair; calls
// report(q, count) for each q > p sharing at least one.
template <class Report>
void shared_counts(const std::vector<std::vector<std::int32_t>>& members, const Incidence& inc, Report&& report) {
  std::vector<std::int32_t> count(members.size(), 0);
  std::vector<std::int32_t> touched;
  for (std::size_t p = 0; p < members.size(); ++p) {
    for (auto x : members[p]) {
      for (auto q : inc.of(x)) {
        if (static_cast<std::size_t>(q) <= p) continue;
        if (count[q]++ == 0) touched.push_back(q);
      }
    }
    std::sort(touched.begin(), touched.end());
    for (auto q : touched) {
      report(p, static_cast<std::size_t>(q), count[q]);
      count[q] = 0;
    }
    touched.clear();
  }
}

std::vector<std::int32_t> reverse_bfs(const LayeredGraph& g, VertexId target) {
  std::vector<std::int32_t> dist(g.vertex_count(), kUnreachable);
  std::vector<VertexId> queue{target};
  dist[target] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const VertexId u = queue[head];
    for (const Arc& a : g.in(u)) {
      if (dist[a.to] == kUnreachable) {
        dist[a.to] = dist[u] + 1;
        queue.push_back(a.to);
      }
    }
  }
  return dist;
}

class EmulatorGraph {
 public:
  EmulatorGraph(const LayeredGraph& g, const WeightedEmulator& em) : n_(g.vertex_count()) {
    offsets_.assign(n_ + 1, 0);
    for (const auto& e : em.edges) {
      if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_) throw InvalidArgument("emulator edge endpoint out of range");
      if (e.w < 1) throw InvalidArgument("emulator edge weight must be positive");
      ++offsets_[e.u + 1];
      if (!g.directed()) ++offsets_[e.v + 1];
    }
    for (std::int64_t i = 0; i < n_; ++i) offsets_[i + 1] += offsets_[i];
    arcs_.resize(offsets_[n_]);
    std::vector<std::int64_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (std::size_t i = 0; i < em.edges.size(); ++i) {
      const auto& e = em.edges[i];
      arcs_[fill[e.u]++] = {e.v, static_cast<std::int64_t>(i)};
      if (!g.directed()) arcs_[fill[e.v]++] = {e.u, static_cast<std::int64_t>(i)};
    }
  }

  // Dijkstra with (distance, vertex) ordering; pred holds the emulator edge
  // that first reached each vertex at its final distance.
  void run(VertexId source, const WeightedEmulator& em, std::vector<std::int64_t>& dist,
           std::vector<std::int64_t>& pred) const {
    dist.assign(n_, kInfinite);
    pred.assign(n_, -1);
    using Item = std::pair<std::int64_t, VertexId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[source] = 0;
    heap.push({0, source});
    while (!heap.empty()) {
      const auto [d, u] = heap.top();
      heap.pop();
      if (d != dist[u]) continue;
      for (std::int64_t i = offsets_[u]; i < offsets_[u + 1]; ++i) {
        const auto [to, edge] = arcs_[i];
        const std::int64_t nd = d + em.edges[edge].w;
        if (nd < dist[to]) {
          dist[to] = nd;
          pred[to] = edge;
          heap.push({nd, to});
        }
      }
    }
  }

 private:
  std::int64_t n_;
  std::vector<std::int64_t> offsets_;
  std::vector<std::pair<VertexId, std::int64_t>> arcs_;
};

std::vector<std::int64_t> widen(const std::vector<std::int32_t>& d) {
  std::vector<std::int64_t> out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out[i] = d[i] == kUnreachable ? kInfinite : d[i];
  return out;
}

void fill_stretch(StretchResult& res) {
  const std::size_t n = res.base_dist.size();
  res.stretch.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto gd = res.base_dist[i], hd = res.candidate_dist[i];
    if (gd == kInfinite) {
      res.stretch[i] = 0;
      continue;
    }
    if (hd == kInfinite) {
      res.stretch[i] = kInfinite;
      ++res.disconnected;
    } else {
      res.stretch[i] = hd - gd;
    }
    if (res.worst_pair < 0 || res.stretch[i] > res.max_stretch) {
      res.max_stretch = res.stretch[i];
      res.worst_pair = static_cast<std::int64_t>(i);
    }
  }
}

}  // namespace

const char* to_string(CountClass c) {
  switch (c) {
    case CountClass::zero: return "zero";
    case CountClass::one: return "one";
    case CountClass::many: return "many";
  }
  return "?";
}

void VerificationReport::fail(std::int64_t a, std::int64_t b, std::string message) {
  ++failures;
  if (violations.size() < kMaxListed) violations.push_back(Violation{a, b, std::move(message)});
}

PathCountResult count_shortest_paths(const LayeredGraph& g, VertexId u, VertexId v, const EdgeMask* mask) {
  if (u < 0 || u >= g.vertex_count() || v < 0 || v >= g.vertex_count()) throw InvalidArgument("vertex out of range");
  Bfs bfs(g);
  bfs.run(u, mask, true);
  PathCountResult res;
  res.dist = bfs.dist(v);
  if (res.dist != kUnreachable) res.count_class = bfs.paths(v) == 1 ? CountClass::one : CountClass::many;
  return res;
}

const char* to_string(DisjointMode m) {
  switch (m) {
    case DisjointMode::edge_and_vertex: return "edge_and_vertex";
    case DisjointMode::edge_overlap_le_1: return "edge_overlap_le_1";
    case DisjointMode::clique_edge_unique: return "clique_edge_unique";
    case DisjointMode::edge_disjoint: return "edge_disjoint";
  }
  return "?";
}

DisjointMode disjoint_mode_from_string(const std::string& s) {
  for (auto m : {DisjointMode::edge_and_vertex, DisjointMode::edge_overlap_le_1, DisjointMode::clique_edge_unique,
                 DisjointMode::edge_disjoint}) {
    if (s == to_string(m)) return m;
  }
  throw InvalidArgument("unknown disjointness mode '" + s + "'");
}

DisjointMode default_disjoint_mode(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::base:
    case InstanceKind::outer:
    case InstanceKind::inner: return DisjointMode::edge_and_vertex;
    case InstanceKind::product: return DisjointMode::edge_overlap_le_1;
    case InstanceKind::spanner: return DisjointMode::clique_edge_unique;
    case InstanceKind::improved_spanner: return DisjointMode::edge_disjoint;
  }
  return DisjointMode::edge_and_vertex;
}

VerificationReport audit_pair_disjointness(const LayeredGraph& g, const PairSet& pairs, DisjointMode mode) {
  VerificationReport rep;
  rep.name = std::string("disjointness.") + to_string(mode);
  const std::size_t P = pairs.size();
  rep.checked = static_cast<std::int64_t>(P) * (static_cast<std::int64_t>(P) - 1) / 2;
  std::vector<std::vector<std::int32_t>> edge_sets(P);
  for (std::size_t p = 0; p < P; ++p) {
    const auto& path = pairs.pairs[p].path;
    if (path.empty() && pairs.pairs[p].expected_length > 0) throw InvalidArgument("pair " + std::to_string(p) + " has no canonical path");
    for (EdgeId e : path) {
      if (e < 0 || e >= g.edge_count()) throw InvalidArgument("pair " + std::to_string(p) + " path edge out of range");
    }
    edge_sets[p] = sorted_unique(std::vector<std::int32_t>(path.begin(), path.end()));
  }
  const Incidence by_edge = build_incidence(g.edge_count(), edge_sets);

  if (mode == DisjointMode::clique_edge_unique) {
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (g.edge(e).kind != EdgeKind::clique) continue;
      const auto owners = by_edge.of(e);
      if (owners.size() >= 2) {
        rep.fail(owners[0], owners[1],
                 "clique edge " + std::to_string(e) + " lies on " + std::to_string(owners.size()) + " canonical paths");
      }
    }
    std::sort(rep.violations.begin(), rep.violations.end(),
              [](const Violation& a, const Violation& b) { return std::tie(a.a, a.b) < std::tie(b.a, b.b); });
    return rep;
  }

  const std::int32_t edge_limit = mode == DisjointMode::edge_overlap_le_1 ? 1 : 0;
  std::set<std::pair<std::int64_t, std::int64_t>> flagged;
  shared_counts(edge_sets, by_edge, [&](std::size_t p, std::size_t q, std::int32_t shared) {
    if (shared > edge_limit) {
      flagged.emplace(p, q);
      rep.fail(static_cast<std::int64_t>(p), static_cast<std::int64_t>(q),
               "paths share " + std::to_string(shared) + " edges");
    }
  });
  if (mode != DisjointMode::edge_and_vertex) return rep;

  std::vector<std::vector<std::int32_t>> vertex_sets(P);
  for (std::size_t p = 0; p < P; ++p) {
    const auto verts = walk_path(g, pairs.pairs[p].source, pairs.pairs[p].path);
    vertex_sets[p] = sorted_unique(std::vector<std::int32_t>(verts.begin(), verts.end()));
  }
  const Incidence by_vertex = build_incidence(g.vertex_count(), vertex_sets);
  shared_counts(vertex_sets, by_vertex, [&](std::size_t p, std::size_t q, std::int32_t shared) {
    if (shared > 1 && !flagged.count({static_cast<std::int64_t>(p), static_cast<std::int64_t>(q)})) {
      rep.fail(static_cast<std::int64_t>(p), static_cast<std::int64_t>(q),
               "paths share " + std::to_string(shared) + " vertices");
    }
  });
  std::stable_sort(rep.violations.begin(), rep.violations.end(),
                   [](const Violation& a, const Violation& b) { return std::tie(a.a, a.b) < std::tie(b.a, b.b); });
  return rep;
}

VerificationReport audit_canonical_paths(const LayeredGraph& g, const PairSet& pairs) {
  VerificationReport rep;
  rep.name = "canonical_paths";
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const CriticalPair& cp = pairs.pairs[p];
    ++rep.checked;
    const auto id = static_cast<std::int64_t>(p);
    if (cp.source < 0 || cp.source >= g.vertex_count() || cp.target < 0 || cp.target >= g.vertex_count()) {
      rep.fail(id, -1, "endpoint out of range");
      continue;
    }
    try {
      const auto verts = walk_path(g, cp.source, cp.path);
      if (verts.back() != cp.target) {
        rep.fail(id, -1, "path ends at " + std::to_string(verts.back()));
        continue;
      }
    } catch (const InvalidArgument& e) {
      rep.fail(id, -1, e.what());
      continue;
    }
    if (static_cast<std::int64_t>(cp.path.size()) != cp.expected_length) {
      rep.fail(id, -1,
               "path has " + std::to_string(cp.path.size()) + " edges, expected " + std::to_string(cp.expected_length));
    }
  }
  return rep;
}

std::vector<std::int32_t> pair_distances(const LayeredGraph& g, const PairSet& pairs, const EdgeMask* mask,
                                         std::int32_t stop_depth) {
  const auto groups = detail::group_by_source(pairs);
  std::vector<std::int32_t> out(pairs.size(), kUnreachable);
  detail::parallel_chunks(
      groups.size(),
      [&](std::size_t begin, std::size_t end) {
        Bfs bfs(g);
        for (std::size_t i = begin; i < end; ++i) {
          bfs.run(groups[i].first, mask, false, stop_depth);
          for (std::size_t p : groups[i].second) out[p] = bfs.dist(pairs.pairs[p].target);
        }
      },
      16);
  return out;
}

VerificationReport audit_unique_shortest_paths(const LayeredGraph& g, const PairSet& pairs) {
  VerificationReport rep;
  rep.name = "unique_shortest_paths";
  const auto groups = detail::group_by_source(pairs);
  std::vector<std::int32_t> dist(pairs.size(), kUnreachable);
  std::vector<std::uint8_t> count(pairs.size(), 0);
  detail::parallel_chunks(
      groups.size(),
      [&](std::size_t begin, std::size_t end) {
        Bfs bfs(g);
        for (std::size_t i = begin; i < end; ++i) {
          std::int64_t depth = 0;
          for (std::size_t p : groups[i].second) depth = std::max(depth, pairs.pairs[p].expected_length);
          bfs.run(groups[i].first, nullptr, true, static_cast<std::int32_t>(depth));
          for (std::size_t p : groups[i].second) {
            dist[p] = bfs.dist(pairs.pairs[p].target);
            count[p] = bfs.paths(pairs.pairs[p].target);
          }
        }
      },
      16);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    ++rep.checked;
    const auto id = static_cast<std::int64_t>(p);
    if (dist[p] != pairs.pairs[p].expected_length) {
      rep.fail(id, -1,
               dist[p] == kUnreachable || dist[p] > pairs.pairs[p].expected_length
                   ? "target not reached within " + std::to_string(pairs.pairs[p].expected_length)
                   : "distance " + std::to_string(dist[p]) + " below expected " +
                         std::to_string(pairs.pairs[p].expected_length));
    } else if (count[p] != 1) {
      rep.fail(id, -1, "multiple shortest paths");
    }
  }
  return rep;
}

std::vector<VerificationReport> audit_inner_conditions(const LayeredGraph& g, const PairSet& ports, int c, int L,
                                                       int q) {
  const std::int64_t depth = static_cast<std::int64_t>(L) * c;
  std::vector<VerificationReport> out;

  VerificationReport size;
  size.name = "inner.vertex_bound";
  size.checked = 1;
  if (g.vertex_count() > static_cast<std::int64_t>(q) * L) {
    size.fail(-1, -1, "|V| = " + std::to_string(g.vertex_count()) + " exceeds qL = " + std::to_string(q * L));
  }
  out.push_back(std::move(size));

  VerificationReport count;
  count.name = "inner.pair_count";
  count.checked = 1;
  if (static_cast<std::int64_t>(ports.size()) < q) {
    count.fail(-1, -1, "|P| = " + std::to_string(ports.size()) + " below q = " + std::to_string(q));
  }
  out.push_back(std::move(count));

  VerificationReport unique = audit_unique_shortest_paths(g, ports);
  unique.name = "inner.unique_paths";
  for (std::size_t p = 0; p < ports.size(); ++p) {
    if (ports.pairs[p].expected_length != depth) {
      unique.fail(static_cast<std::int64_t>(p), -1, "expected length is not Lc = " + std::to_string(depth));
    }
  }
  out.push_back(std::move(unique));

  VerificationReport sep = audit_pair_disjointness(g, ports, DisjointMode::edge_disjoint);
  sep.name = "inner.disjoint_separated";
  Bfs bfs(g);
  for (std::size_t i = 0; i < ports.size(); ++i) {
    bfs.run(ports.pairs[i].source);
    for (std::size_t j = 0; j < ports.size(); ++j) {
      if (i == j) continue;
      ++sep.checked;
      const auto d = bfs.dist(ports.pairs[j].target);
      if (d != kUnreachable && d < depth) {
        sep.fail(static_cast<std::int64_t>(i), static_cast<std::int64_t>(j),
                 "cross distance " + std::to_string(d) + " below Lc");
      }
    }
  }
  out.push_back(std::move(sep));

  VerificationReport edges;
  edges.name = "inner.edge_bound";
  edges.checked = 1;
  if (g.edge_count() < depth * q) {
    edges.fail(-1, -1, "|E| = " + std::to_string(g.edge_count()) + " below cqL = " + std::to_string(depth * q));
  }
  out.push_back(std::move(edges));
  return out;
}

ReachabilityIndex::ReachabilityIndex(const LayeredGraph& g, const ResourceLimits& limits) {
  const std::int64_t n = g.vertex_count();
  if (n > limits.max_oracle_vertices) {
    throw ResourceLimit("reachability index over " + std::to_string(n) + " vertices exceeds oracle budget " +
                        std::to_string(limits.max_oracle_vertices));
  }
  words_ = static_cast<std::size_t>((n + 63) / 64);
  rows_.assign(static_cast<std::size_t>(n) * words_, 0);
  Bfs bfs(g);
  for (VertexId u = 0; u < n; ++u) {
    bfs.run(u);
    for (VertexId v : bfs.reached()) rows_[static_cast<std::size_t>(u) * words_ + (v >> 6)] |= std::uint64_t{1} << (v & 63);
  }
}

LayeredGraph apply_shortcuts(const LayeredGraph& g, const ShortcutSet& sc) {
  std::unordered_set<std::uint64_t> present;
  present.reserve(g.edge_count() + sc.size());
  for (const Edge& e : g.edges()) present.insert(edge_key(e.u, e.v, g.directed()));
  std::vector<Edge> extra;
  for (const auto& [u, v] : sc.edges) {
    if (u == v) continue;
    if (present.insert(edge_key(u, v, g.directed())).second) extra.push_back(Edge{u, v, EdgeKind::shortcut, -1, -1});
  }
  return g.with_extra_edges(extra);
}

ShortcutAccounting shortcut_accounting(const LayeredGraph& g, const PairSet& pairs, const ShortcutSet& sc,
                                       const ReachabilityIndex* reach) {
  const std::int64_t n = g.vertex_count();
  for (const auto& [u, v] : sc.edges) {
    if (u < 0 || u >= n || v < 0 || v >= n) throw InvalidArgument("shortcut endpoint out of range");
  }
  if (reach != nullptr) {
    for (const auto& [u, v] : sc.edges) {
      if (!reach->reachable(u, v)) {
        throw InvalidArgument("shortcut (" + std::to_string(u) + ", " + std::to_string(v) + ") is not in the closure");
      }
    }
  } else {
    std::vector<std::size_t> order(sc.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sc.edges[a] < sc.edges[b]; });
    Bfs bfs(g);
    VertexId last = -1;
    for (std::size_t i : order) {
      const auto [u, v] = sc.edges[i];
      if (u != last) {
        bfs.run(u);
        last = u;
      }
      if (bfs.dist(v) == kUnreachable) {
        throw InvalidArgument("shortcut (" + std::to_string(u) + ", " + std::to_string(v) + ") is not in the closure");
      }
    }
  }

  const LayeredGraph augmented = apply_shortcuts(g, sc);

  ShortcutAccounting res;
  res.shortcuts = static_cast<std::int64_t>(sc.size());
  res.report.name = "shortcut_accounting";
  std::int64_t depth = 0;
  for (const auto& cp : pairs.pairs) depth = std::max(depth, cp.expected_length);
  res.distances = pair_distances(augmented, pairs, nullptr, static_cast<std::int32_t>(depth));
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto d = res.distances[p];
    if (d != kUnreachable && d < pairs.pairs[p].expected_length) res.improved_pairs.push_back(static_cast<std::int64_t>(p));
  }
  res.improved = static_cast<std::int64_t>(res.improved_pairs.size());

  // Position of each vertex along each canonical path it lies on.
  std::vector<std::vector<std::int32_t>> on_path(pairs.size());
  std::vector<std::vector<VertexId>> walks(pairs.size());
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    walks[p] = walk_path(g, pairs.pairs[p].source, pairs.pairs[p].path);
    on_path[p] = sorted_unique(std::vector<std::int32_t>(walks[p].begin(), walks[p].end()));
  }
  const Incidence by_vertex = build_incidence(n, on_path);
  auto position = [&](std::size_t p, VertexId v) {
    const auto& w = walks[p];
    return static_cast<std::int64_t>(std::find(w.begin(), w.end(), v) - w.begin());
  };

  std::vector<std::uint8_t> covered(pairs.size(), 0);
  for (std::size_t s = 0; s < sc.size(); ++s) {
    const auto [u, v] = sc.edges[s];
    const auto pu = by_vertex.of(u), pv = by_vertex.of(v);
    std::vector<std::int32_t> useful_for;
    std::set_intersection(pu.begin(), pu.end(), pv.begin(), pv.end(), std::back_inserter(useful_for));
    std::erase_if(useful_for, [&](std::int32_t p) {
      const std::int64_t gap = position(p, v) - position(p, u);
      return g.directed() ? gap < 2 : (gap < 2 && gap > -2);
    });
    if (useful_for.empty()) continue;
    ++res.useful;
    for (auto p : useful_for) covered[p] = 1;
    if (useful_for.size() > 1) {
      res.report.fail(useful_for[0], useful_for[1],
                      "shortcut " + std::to_string(s) + " is useful for " + std::to_string(useful_for.size()) + " pairs");
    }
  }
  for (auto p : res.improved_pairs) {
    ++res.report.checked;
    if (!covered[p]) res.report.fail(p, -1, "pair improved without a shortcut along its canonical path");
  }
  if (res.improved > res.useful) {
    res.report.fail(-1, -1, "improved " + std::to_string(res.improved) + " exceeds useful " + std::to_string(res.useful));
  }
  if (res.useful > res.shortcuts) res.report.fail(-1, -1, "useful count exceeds |E'|");
  return res;
}

std::int64_t SpannerSubgraph::size() const {
  return static_cast<std::int64_t>(std::count_if(alive.begin(), alive.end(), [](std::uint8_t x) { return x != 0; }));
}

StretchResult additive_stretch(const LayeredGraph& g, const SpannerSubgraph& h, const PairSet& pairs) {
  if (static_cast<std::int64_t>(h.alive.size()) != g.edge_count()) throw InvalidArgument("subgraph mask size mismatch");
  StretchResult res;
  res.report.name = "spanner_stretch";
  res.base_dist = widen(pair_distances(g, pairs));
  res.candidate_dist = widen(pair_distances(g, pairs, &h.alive));
  res.report.checked = static_cast<std::int64_t>(pairs.size());
  fill_stretch(res);
  return res;
}

std::vector<std::int64_t> emulator_distances(const LayeredGraph& g, const WeightedEmulator& em, VertexId source) {
  EmulatorGraph eg(g, em);
  std::vector<std::int64_t> dist, pred;
  eg.run(source, em, dist, pred);
  return dist;
}

namespace {

void validate_emulator(const LayeredGraph& g, const WeightedEmulator& em) {
  std::vector<std::size_t> order(em.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return em.edges[a].u < em.edges[b].u; });
  Bfs bfs(g);
  VertexId last = -1;
  for (std::size_t i : order) {
    const auto& e = em.edges[i];
    if (e.u < 0 || e.u >= g.vertex_count() || e.v < 0 || e.v >= g.vertex_count()) {
      throw InvalidArgument("emulator edge endpoint out of range");
    }
    if (e.u != last) {
      bfs.run(e.u);
      last = e.u;
    }
    const auto d = bfs.dist(e.v);
    if (d == kUnreachable || e.w < d) {
      throw InvalidArgument("emulator edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) + ", " +
                            std::to_string(e.w) + ") is lighter than the distance it spans");
    }
  }
}

}  // namespace

StretchResult additive_stretch(const LayeredGraph& g, const WeightedEmulator& em, const PairSet& pairs) {
  validate_emulator(g, em);
  StretchResult res;
  res.report.name = "emulator_stretch";
  res.base_dist = widen(pair_distances(g, pairs));
  res.candidate_dist.assign(pairs.size(), kInfinite);
  EmulatorGraph eg(g, em);
  std::vector<std::int64_t> dist, pred;
  for (const auto& [source, members] : detail::group_by_source(pairs)) {
    eg.run(source, em, dist, pred);
    for (std::size_t p : members) res.candidate_dist[p] = dist[pairs.pairs[p].target];
  }
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    ++res.report.checked;
    if (res.candidate_dist[p] < res.base_dist[p]) {
      res.report.fail(static_cast<std::int64_t>(p), -1, "emulator distance below graph distance");
    }
  }
  fill_stretch(res);
  return res;
}

StretchResult all_pairs_stretch(const LayeredGraph& g, const SpannerSubgraph& h, const ResourceLimits& limits) {
  const DistanceTable base = all_pairs_small_oracle(g, limits);
  StretchResult res;
  res.report.name = "spanner_stretch.all_pairs";
  Bfs bfs(g);
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    bfs.run(u, &h.alive);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      const auto gd = base.at(u, v);
      if (u == v || gd == kUnreachable) continue;
      res.base_dist.push_back(gd);
      res.candidate_dist.push_back(bfs.dist(v) == kUnreachable ? kInfinite : bfs.dist(v));
    }
  }
  res.report.checked = static_cast<std::int64_t>(res.base_dist.size());
  fill_stretch(res);
  return res;
}

std::vector<VertexId> canonical_shortest_path(const LayeredGraph& g, VertexId u, VertexId v) {
  const auto to_v = reverse_bfs(g, v);
  if (to_v[u] == kUnreachable) throw InvalidArgument("no path between " + std::to_string(u) + " and " + std::to_string(v));
  std::vector<VertexId> path{u};
  VertexId cur = u;
  while (cur != v) {
    VertexId next = -1;
    for (const Arc& a : g.out(cur)) {
      if (to_v[a.to] == to_v[cur] - 1 && (next < 0 || a.to < next)) next = a.to;
    }
    path.push_back(next);
    cur = next;
  }
  return path;
}

EmulatorConversion emulator_to_spanner(const LayeredGraph& g, const WeightedEmulator& em, const PairSet& pairs,
                                       std::int64_t D) {
  validate_emulator(g, em);
  EmulatorConversion res;
  res.report.name = "emulator_conversion";
  res.emulator_dist.assign(pairs.size(), kInfinite);
  std::vector<std::uint8_t> used(em.size(), 0);
  EmulatorGraph eg(g, em);
  std::vector<std::int64_t> dist, pred;
  for (const auto& [source, members] : detail::group_by_source(pairs)) {
    eg.run(source, em, dist, pred);
    for (std::size_t p : members) {
      VertexId cur = pairs.pairs[p].target;
      res.emulator_dist[p] = dist[cur];
      if (dist[cur] == kInfinite) continue;
      while (cur != source) {
        const auto& e = em.edges[pred[cur]];
        used[pred[cur]] = 1;
        cur = e.v == cur ? e.u : e.v;
      }
    }
  }

  res.spanner.alive.assign(g.edge_count(), 0);
  for (std::size_t i = 0; i < em.size(); ++i) {
    if (!used[i]) continue;
    const auto walk = canonical_shortest_path(g, em.edges[i].u, em.edges[i].v);
    for (std::size_t k = 0; k + 1 < walk.size(); ++k) {
      EdgeId best = -1;
      for (const Arc& a : g.out(walk[k])) {
        if (a.to == walk[k + 1] && (best < 0 || a.edge < best)) best = a.edge;
      }
      res.spanner.alive[best] = 1;
    }
  }

  res.spanner_dist = widen(pair_distances(g, pairs, &res.spanner.alive));
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto id = static_cast<std::int64_t>(p);
    if (res.emulator_dist[p] == kInfinite) {
      res.skipped_pairs.push_back(id);
      continue;
    }
    ++res.report.checked;
    if (res.spanner_dist[p] != res.emulator_dist[p]) {
      res.report.fail(id, -1,
                      "spanner distance " + std::to_string(res.spanner_dist[p]) + " differs from emulator distance " +
                          std::to_string(res.emulator_dist[p]));
    }
  }
  res.clique_edges = count_edges_of_kind(g, EdgeKind::clique, &res.spanner.alive);
  res.clique_bound = 2 * D * static_cast<std::int64_t>(em.size());
  if (res.clique_edges > res.clique_bound) {
    res.report.fail(-1, -1,
                    "clique edges " + std::to_string(res.clique_edges) + " exceed 2D|em| = " +
                        std::to_string(res.clique_bound));
  }
  return res;
}

DistanceTable all_pairs_small_oracle(const LayeredGraph& g, const ResourceLimits& limits) {
  const std::int64_t n = g.vertex_count();
  if (n > limits.max_oracle_vertices) {
    throw ResourceLimit("all-pairs oracle over " + std::to_string(n) + " vertices exceeds budget " +
                        std::to_string(limits.max_oracle_vertices));
  }
  DistanceTable t;
  t.n = n;
  t.dist.assign(static_cast<std::size_t>(n * n), kUnreachable);
  detail::parallel_chunks(static_cast<std::size_t>(n), [&](std::size_t begin, std::size_t end) {
    Bfs bfs(g);
    for (std::size_t u = begin; u < end; ++u) {
      bfs.run(static_cast<VertexId>(u));
      for (VertexId v : bfs.reached()) t.dist[u * n + v] = bfs.dist(v);
    }
  });
  return t;
}

std::int64_t count_edges_of_kind(const LayeredGraph& g, EdgeKind kind, const EdgeMask* mask) {
  std::int64_t count = 0;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (g.edge(e).kind == kind && (mask == nullptr || mask->empty() || (*mask)[e])) ++count;
  }
  return count;
}

}  // namespace lbg
