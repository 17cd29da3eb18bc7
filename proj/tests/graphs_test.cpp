#include <map>
#include <set>

#include "doctest.h"
#include "lbg/graphs.hpp"
#include "lbg/oracles.hpp"
#include "oracle.hpp"

using namespace lbg;

namespace {

using Key = std::pair<int, oracle::Point>;

std::vector<std::int32_t> narrow(const oracle::Point& p) { return {p.begin(), p.end()}; }

// Independent rebuild of G(d, r, D): vertex keys, edge list, pair list.
struct RefBase {
  std::vector<Key> vertices;
  std::set<std::pair<int, int>> edges;
  std::vector<std::pair<int, int>> pairs;
};

oracle::Point add(oracle::Point a, const oracle::Point& b, std::int64_t k = 1) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += k * b[i];
  return a;
}

RefBase ref_base(int d, int r, int D) {
  RefBase ref;
  const std::int64_t R = static_cast<std::int64_t>(d) * r * D;
  const auto corners = oracle::extreme_points_2d(oracle::ball(2, r * r));
  REQUIRE(d == 2);
  std::map<Key, int> id;
  for (int k = 0; k <= D; ++k) {
    for (const auto& p : oracle::ball(d, (R + k * r) * (R + k * r))) {
      id[{k, p}] = static_cast<int>(ref.vertices.size());
      ref.vertices.push_back({k, p});
    }
  }
  for (const auto& [key, u] : id) {
    if (key.first == D) continue;
    for (const auto& v : corners) ref.edges.insert({u, id.at({key.first + 1, add(key.second, v)})});
  }
  for (const auto& a : oracle::ball(d, R * R)) {
    for (const auto& v : corners) ref.pairs.emplace_back(id.at({0, a}), id.at({D, add(a, v, D)}));
  }
  return ref;
}

}  // namespace

TEST_SUITE("graphs") {

TEST_CASE("base graph matches an independent rebuild") {
  for (int r = 1; r <= 2; ++r) {
    for (int D = 1; D <= 3; ++D) {
      const auto ref = ref_base(2, r, D);
      const Instance inst = build_base({2, r, D, Orientation::directed});
      const auto& g = inst.graph;
      INFO("r = " << r << " D = " << D);
      REQUIRE(g.vertex_count() == static_cast<std::int64_t>(ref.vertices.size()));
      for (VertexId v = 0; v < g.vertex_count(); ++v) {
        CHECK(g.label(v).layer == ref.vertices[v].first);
        CHECK(g.label(v).x == narrow(ref.vertices[v].second));
      }
      std::set<std::pair<int, int>> got;
      for (const auto& e : g.edges()) got.insert({e.u, e.v});
      CHECK(got == ref.edges);
      CHECK(g.edge_count() == static_cast<std::int64_t>(ref.edges.size()));
      REQUIRE(inst.pairs.size() == ref.pairs.size());
      for (std::size_t p = 0; p < ref.pairs.size(); ++p) {
        CHECK(inst.pairs.pairs[p].source == ref.pairs[p].first);
        CHECK(inst.pairs.pairs[p].target == ref.pairs[p].second);
        CHECK(inst.pairs.pairs[p].expected_length == D);
      }
    }
  }
}

TEST_CASE("base (2,1,2) counts") {
  const Instance inst = build_base({2, 1, 2});
  CHECK(inst.graph.vertex_count() == 243);
  CHECK(inst.graph.edge_count() == 520);
  CHECK(inst.pairs.size() == 196);
  CHECK(transitive_closure_diameter(inst.graph) == 2);
}

TEST_CASE("canonical path of a single pair") {
  const Instance inst = build_base({2, 1, 2});
  const std::int32_t origin[] = {0, 0}, one[] = {1, 0}, two[] = {2, 0};
  const VertexId a = find_lattice_vertex(inst.graph, 0, origin);
  const VertexId b = find_lattice_vertex(inst.graph, 1, one);
  const VertexId c = find_lattice_vertex(inst.graph, 2, two);
  bool found = false;
  for (const auto& cp : inst.pairs.pairs) {
    if (cp.source != a || cp.target != c) continue;
    found = true;
    CHECK(walk_path(inst.graph, cp.source, cp.path) == std::vector<VertexId>{a, b, c});
  }
  CHECK(found);
}

TEST_CASE("D = 1 paths are single edges") {
  const Instance inst = build_base({2, 1, 1});
  CHECK(inst.graph.max_layer() == 1);
  for (const auto& cp : inst.pairs.pairs) CHECK(cp.path.size() == 1);
}

TEST_CASE("pair count identity and path properties across parameters") {
  for (int d : {2, 3}) {
    for (int r : {1, 2}) {
      for (int D : {1, 2}) {
        const Instance inst = build_base({d, r, D});
        const auto R = static_cast<std::int64_t>(d) * r * D;
        INFO("d = " << d << " r = " << r << " D = " << D);
        CHECK(static_cast<std::int64_t>(inst.pairs.size()) ==
              ball_size(BallSpec::of_radius(d, R)) * static_cast<std::int64_t>(hull_corners(BallSpec::of_radius(d, r)).size()));
        CHECK(audit_canonical_paths(inst.graph, inst.pairs).passed());
        CHECK(audit_unique_shortest_paths(inst.graph, inst.pairs).passed());
        CHECK(audit_pair_disjointness(inst.graph, inst.pairs, DisjointMode::edge_and_vertex).passed());
        for (const auto& e : inst.graph.edges()) {
          CHECK(inst.graph.label(e.v).layer == inst.graph.label(e.u).layer + 1);
        }
      }
    }
  }
}

TEST_CASE("unique paths agree with an exact path counter") {
  const Instance inst = build_base({2, 2, 2});
  oracle::Graph og(static_cast<int>(inst.graph.vertex_count()), true);
  for (const auto& e : inst.graph.edges()) og.add(e.u, e.v);
  for (std::size_t p = 0; p < inst.pairs.size(); p += 7) {
    const auto& cp = inst.pairs.pairs[p];
    CHECK(og.count_paths(cp.source, cp.target) == 1);
  }
}

TEST_CASE("undirected orientation keeps the same edges") {
  const Instance a = build_base({2, 1, 2, Orientation::directed});
  const Instance b = build_base({2, 1, 2, Orientation::undirected});
  CHECK_FALSE(b.graph.directed());
  CHECK(a.graph.edges() == b.graph.edges());
  CHECK(audit_unique_shortest_paths(b.graph, b.pairs).passed());
}

TEST_CASE("alternation product") {
  const BaseGraphParams g{2, 1, 1};
  const Instance inst = alternation_product(g, g, Orientation::directed);
  CHECK(inst.graph.max_layer() == 2);
  CHECK(inst.graph.vertex_count() == 13 * 13 + 29 * 13 + 29 * 29);
  CHECK(inst.pairs.size() == 2704);
  CHECK(transitive_closure_diameter(inst.graph) == 2);
  for (VertexId v = 0; v < inst.graph.vertex_count(); ++v) {
    const auto& l = inst.graph.label(v);
    std::int64_t nx = 0, ny = 0;
    for (auto c : l.x) nx += std::int64_t{c} * c;
    for (auto c : l.y) ny += std::int64_t{c} * c;
    const std::int64_t rx = 2 + (l.layer + 1) / 2, ry = 2 + l.layer / 2;
    CHECK(nx <= rx * rx);
    CHECK(ny <= ry * ry);
  }
  for (const auto& cp : inst.pairs.pairs) {
    const auto walk = walk_path(inst.graph, cp.source, cp.path);
    REQUIRE(walk.size() == 3);
    const auto &a = inst.graph.label(walk[0]), &m = inst.graph.label(walk[1]), &z = inst.graph.label(walk[2]);
    CHECK(m.y == a.y);
    CHECK(z.x == m.x);
  }
  CHECK(audit_unique_shortest_paths(inst.graph, inst.pairs).passed());
  CHECK(audit_pair_disjointness(inst.graph, inst.pairs, DisjointMode::edge_overlap_le_1).passed());
}

TEST_CASE("undirected product is bipartite by layer parity") {
  const BaseGraphParams g{2, 1, 2};
  const Instance inst = alternation_product(g, g, Orientation::undirected);
  for (const auto& e : inst.graph.edges()) {
    CHECK((inst.graph.label(e.u).layer + inst.graph.label(e.v).layer) % 2 == 1);
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(build_base({1, 1, 1}), InvalidArgument);
  CHECK_THROWS_AS(build_base({2, 0, 1}), InvalidArgument);
  CHECK_THROWS_AS(build_base({2, 1, 0}), InvalidArgument);
  CHECK_THROWS_AS(alternation_product({2, 1, 1}, {2, 1, 2}, Orientation::directed), InvalidArgument);
  ResourceLimits tiny;
  tiny.max_vertices = 100;
  CHECK_THROWS_AS(build_base({2, 1, 2}, tiny), ResourceLimit);
}

TEST_CASE("diameter of trivial graphs") {
  const LayeredGraph single(true, 0, {VertexLabel{}}, {});
  CHECK(transitive_closure_diameter(single) == 0);
  const LayeredGraph empty(true, 0, {}, {});
  CHECK(transitive_closure_diameter(empty) == 0);
}

TEST_CASE("ids are deterministic") {
  const Instance a = build_base({3, 1, 2});
  const Instance b = build_base({3, 1, 2});
  CHECK(a.graph.labels() == b.graph.labels());
  CHECK(a.graph.edges() == b.graph.edges());
  CHECK(a.pairs.pairs == b.pairs.pairs);
}

}
