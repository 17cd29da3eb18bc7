#include <map>

#include "doctest.h"
#include "lbg/oracles.hpp"
#include "lbg/transforms.hpp"
#include "oracle.hpp"

using namespace lbg;

namespace {

Instance small_product(int D) {
  const BaseGraphParams g{2, 1, D};
  return alternation_product(g, g, Orientation::undirected);
}

std::int64_t count_kind(const LayeredGraph& g, VertexKind k) {
  std::int64_t n = 0;
  for (const auto& l : g.labels()) n += l.kind == k;
  return n;
}

}  // namespace

TEST_SUITE("transforms") {

TEST_CASE("subdivide with t = 1 is the identity") {
  const Instance in = small_product(1);
  const Instance out = subdivide(in, 1);
  CHECK(out.graph.labels() == in.graph.labels());
  CHECK(out.graph.edges() == in.graph.edges());
  CHECK(out.pairs.pairs == in.pairs.pairs);
}

TEST_CASE("subdividing one edge") {
  std::vector<VertexLabel> labels(2);
  labels[1].layer = 1;
  Instance in{LayeredGraph(false, 1, labels, {Edge{0, 1, EdgeKind::inherited, 0, 0}}), {}};
  in.pairs.pairs.push_back({0, 1, -1, -1, {0}, 1});
  const Instance out = subdivide(in, 3);
  CHECK(out.graph.vertex_count() == 4);
  CHECK(out.graph.edge_count() == 3);
  CHECK(out.pairs.pairs[0].expected_length == 3);
  CHECK(walk_path(out.graph, 0, out.pairs.pairs[0].path).back() == 1);
  for (VertexId v = 2; v < 4; ++v) {
    CHECK(out.graph.label(v).kind == VertexKind::subdivision);
    CHECK(out.graph.label(v).provenance == 0);
  }
  CHECK_THROWS_AS(subdivide(in, 0), InvalidArgument);
}

TEST_CASE("subdivision counts on the product") {
  const Instance in = small_product(1);
  const Instance out = subdivide(in, 2);
  CHECK(out.graph.edge_count() == 2 * in.graph.edge_count());
  CHECK(out.graph.vertex_count() == in.graph.vertex_count() + in.graph.edge_count());
  CHECK(audit_canonical_paths(out.graph, out.pairs).passed());
  CHECK(audit_unique_shortest_paths(out.graph, out.pairs).passed());
}

TEST_CASE("smallest spanner instance") {
  const SpannerInstance si = build_spanner_instance(2, 1, 2, 1, 1, 1);
  const auto& g = si.instance.graph;
  CHECK(si.clique.delta1 == 4);
  CHECK(si.clique.delta2 == 4);
  // Product: 1387 vertices, 2184 edges; 13 * 29 lattice vertices on the middle
  // layer each become 8 ports joined by 16 clique edges.
  const std::int64_t replaced = 13 * 29;
  CHECK(g.vertex_count() == 1387 - replaced + 8 * replaced);
  CHECK(g.edge_count() == 2184 + 16 * replaced);
  CHECK(count_kind(g, VertexKind::clique_port) == 8 * replaced);
  CHECK(count_edges_of_kind(g, EdgeKind::clique) == 16 * replaced);
  CHECK(si.instance.pairs.size() == 13 * 13 * 4 * 4);
  for (const auto& cp : si.instance.pairs.pairs) CHECK(cp.expected_length == 3);
  CHECK(audit_canonical_paths(g, si.instance.pairs).passed());
  CHECK(audit_unique_shortest_paths(g, si.instance.pairs).passed());
  CHECK(audit_pair_disjointness(g, si.instance.pairs, DisjointMode::clique_edge_unique).passed());
}

TEST_CASE("pair set survives the transforms") {
  const Instance prod = small_product(1);
  const SpannerInstance si = build_spanner_instance(2, 1, 2, 1, 1, 1);
  REQUIRE(prod.pairs.size() == si.instance.pairs.size());
  for (std::size_t p = 0; p < prod.pairs.size(); ++p) {
    const auto &a = prod.pairs.pairs[p], &b = si.instance.pairs.pairs[p];
    CHECK(prod.graph.label(a.source) == si.instance.graph.label(b.source));
    CHECK(prod.graph.label(a.target) == si.instance.graph.label(b.target));
  }
}

TEST_CASE("clique ports are complete bipartite") {
  const SpannerInstance si = build_spanner_instance(2, 1, 2, 1, 1, 1);
  const auto& g = si.instance.graph;
  std::map<std::int64_t, std::vector<VertexId>> ports;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.label(v).kind == VertexKind::clique_port) ports[g.label(v).provenance].push_back(v);
  }
  for (const auto& [orig, vs] : ports) {
    REQUIRE(vs.size() == 8);
    int clique_deg = 0;
    for (VertexId v : vs) {
      for (const Arc& a : g.out(v)) {
        if (g.edge(a.edge).kind != EdgeKind::clique) continue;
        ++clique_deg;
        const bool left = g.label(v).index < 4, right = g.label(a.to).index < 4;
        CHECK(left != right);
        CHECK(g.label(a.to).provenance == orig);
      }
    }
    CHECK(clique_deg == 2 * 16);
  }
}

TEST_CASE("subdivided spanner path length") {
  const SpannerInstance si = build_spanner_instance(2, 1, 2, 1, 2, 2);
  for (const auto& cp : si.instance.pairs.pairs) CHECK(cp.expected_length == 2 * 2 * 2 + 3);
  CHECK(audit_canonical_paths(si.instance.graph, si.instance.pairs).passed());
  CHECK(audit_unique_shortest_paths(si.instance.graph, si.instance.pairs).passed());
  CHECK(audit_pair_disjointness(si.instance.graph, si.instance.pairs, DisjointMode::clique_edge_unique).passed());
}

TEST_CASE("spanner instance with unequal factors") {
  const SpannerInstance si = build_spanner_instance(2, 3, 2, 1, 1, 1);
  CHECK(si.clique.delta1 == 8);
  CHECK(si.clique.delta2 == 4);
  CHECK(audit_unique_shortest_paths(si.instance.graph, si.instance.pairs).passed());
  CHECK_THROWS_AS(build_spanner_instance(2, 1, 2, 3, 1, 1), InvalidArgument);
}

TEST_CASE("inner graph micro instance") {
  const InnerGraph ig = build_inner_graph(1, 2, 4);
  const auto& g = ig.instance.graph;
  CHECK(ig.required_corners == 2);
  CHECK(ig.step_radius == 1);
  CHECK(ig.base_radius == 2);
  CHECK(g.max_layer() == 2);
  CHECK(g.vertex_count() == 13 + 29 + 49);
  CHECK(g.edge_count() == (13 + 29) * 4);
  CHECK(ig.lattice_pair_count == 13 * 4);
  CHECK(ig.instance.pairs.size() == 4);
  CHECK_FALSE(g.directed());
  std::vector<VertexId> ends;
  for (const auto& cp : ig.instance.pairs.pairs) {
    CHECK(cp.expected_length == 2);
    ends.push_back(cp.source);
    ends.push_back(cp.target);
  }
  std::sort(ends.begin(), ends.end());
  CHECK(std::adjacent_find(ends.begin(), ends.end()) == ends.end());
}

TEST_CASE("inner conditions on the micro instance") {
  const InnerGraph ig = build_inner_graph(1, 2, 4);
  const auto reps = audit_inner_conditions(ig.instance.graph, ig.instance.pairs, 1, 2, 4);
  REQUIRE(reps.size() == 5);
  // |V| <= qL cannot hold: four sources, four sinks and a middle layer already
  // need nine vertices.
  CHECK_FALSE(reps[0].passed());
  for (std::size_t i = 1; i < reps.size(); ++i) CHECK(reps[i].passed());
}

TEST_CASE("inner graph port limits") {
  CHECK_THROWS_AS(build_inner_graph(1, 2, 100000), Infeasible);
  CHECK_THROWS_AS(build_inner_graph(0, 2), InvalidArgument);
  CHECK_THROWS_AS(build_inner_graph(1, 1), InvalidArgument);
}

TEST_CASE("outer graph micro instance") {
  const OuterGraph og = build_outer_graph(4, 2);
  CHECK(og.radius == 1);
  REQUIRE(og.subset.size() == 4);
  const auto all = hull_corners(BallSpec::of_radius(3, 1));
  for (int i = 0; i < 4; ++i) CHECK(og.subset.vectors[i] == all.vectors[i]);
  CHECK(og.instance.graph.vertex_count() == 33 + 123 + 257);
  CHECK(og.instance.pairs.size() == 33 * 4);
  CHECK(audit_unique_shortest_paths(og.instance.graph, og.instance.pairs).passed());
  CHECK(audit_pair_disjointness(og.instance.graph, og.instance.pairs, DisjointMode::edge_and_vertex).passed());
}

TEST_CASE("outer radius grows with q") {
  CHECK(build_outer_graph(6, 2).radius == 1);
  CHECK(build_outer_graph(7, 2).radius == 2);
}

TEST_CASE("substitution product") {
  const InnerGraph ig = build_inner_graph(1, 2, 4);
  const OuterGraph og = build_outer_graph(4, 2);
  const Instance comp = substitute_inner(og, ig, 2);
  const std::int64_t expect = 2 * 2 / 2 + (2 - 1) * 2 * 1;
  CHECK(comp.pairs.size() == og.instance.pairs.size());
  for (const auto& cp : comp.pairs.pairs) CHECK(cp.expected_length == expect);
  const auto dist = pair_distances(comp.graph, comp.pairs);
  for (auto d : dist) CHECK(d == expect);
  CHECK(audit_unique_shortest_paths(comp.graph, comp.pairs).passed());
  CHECK(audit_pair_disjointness(comp.graph, comp.pairs, DisjointMode::edge_disjoint).passed());
  const std::int64_t interior = 123;
  CHECK(comp.graph.vertex_count() == 33 + 257 + interior * ig.instance.graph.vertex_count());
  CHECK(count_edges_of_kind(comp.graph, EdgeKind::inner) == interior * ig.instance.graph.edge_count());
  CHECK_THROWS_AS(substitute_inner(og, build_inner_graph(1, 2, 3), 2), InvalidArgument);
  CHECK_THROWS_AS(substitute_inner(og, ig, 3), InvalidArgument);
}

TEST_CASE("improved spanner with L = 4") {
  InnerOuterParams p;
  p.L = 4;
  const ImprovedSpanner is = build_improved_spanner(p);
  const std::int64_t expect = 4 * 4 / 2 + 3 * 4 * 1;
  for (const auto& cp : is.instance.pairs.pairs) CHECK(cp.expected_length == expect);
  PairSet few = is.instance.pairs;
  few.pairs.resize(6);
  CHECK(audit_canonical_paths(is.instance.graph, few).passed());
  CHECK(audit_unique_shortest_paths(is.instance.graph, few).passed());
  const auto n = is.instance.graph.vertex_count();
  const auto P = static_cast<std::int64_t>(is.instance.pairs.size());
  CHECK(is.lambda == (2 * n + 4 * 3 * P - 1) / (4 * 3 * P));
  p.L = 3;
  CHECK_THROWS_AS(build_improved_spanner(p), InvalidArgument);
}

TEST_CASE("provenance of transformed vertices") {
  const Instance prod = small_product(1);
  const SpannerInstance si = build_spanner_instance(2, 1, 2, 1, 1, 1);
  for (const auto& l : si.instance.graph.labels()) {
    if (l.kind != VertexKind::clique_port) continue;
    const auto& orig = prod.graph.label(static_cast<VertexId>(l.provenance));
    CHECK(orig.layer == 1);
    CHECK(orig.x == l.x);
    CHECK(orig.y == l.y);
  }
}

}
