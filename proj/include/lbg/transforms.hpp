#pragma once

// Spanner/emulator hard instances derived from the layered graphs: edge
// subdivision, bipartite clique replacement, and the inner/outer substitution
// product. Every transform rewrites the canonical paths of the pairs it
// carries and keeps provenance on each new vertex.

#include <cstdint>
#include <string>

#include "lbg/graph.hpp"
#include "lbg/graphs.hpp"
#include "lbg/lattice.hpp"

namespace lbg {

struct CliqueParams {
  int delta1 = 0;
  int delta2 = 0;
};

// Replaces every inherited edge by a path of t edges through t-1 new
// subdivision vertices. Other edges are copied. Surviving vertex and edge ids
// are unchanged; new vertices are appended in edge order. t = 1 is the
// identity.
Instance subdivide(const Instance& in, int t);

struct CliqueReplaced {
  Instance instance;
  CliqueParams clique;
};

// Replaces each interior lattice vertex (0 < layer < top) with K_{delta1,
// delta2}. Port p < delta1 receives the edge stepping along corner p of the
// first factor; port delta1 + q the edge stepping along corner q of the second.
// Boundary vertices that lack some of those edges keep the unattached ports, so
// every clique is complete. Old edge ids are preserved; clique edges follow.
CliqueReplaced clique_replace(const Instance& in, const ResourceLimits& limits = default_limits());

struct SpannerInstance {
  Instance instance;
  CliqueParams clique;
  BaseGraphParams first;
  BaseGraphParams second;
  int t = 1;
};

// build_base x2 -> undirected alternation product -> subdivide(t) ->
// clique_replace. Requires |V_{d1}(r1)| >= |V_{d2}(r2)|.
SpannerInstance build_spanner_instance(int d1, int r1, int d2, int r2, int D, int t,
                                       const ResourceLimits& limits = default_limits());

struct InnerGraph {
  // Pairs are the q ports: sources are input ports, targets output ports.
  Instance instance;
  int c = 1;
  int L = 2;
  int q = 0;
  // Corner count demanded of the step set, ceil(4c / pi).
  std::int64_t required_corners = 0;
  std::int64_t step_radius = 0;
  // Layer-0 radius, L * c * step_radius.
  std::int64_t base_radius = 0;
  // |B_2(base_radius)| * |V_2(step_radius)|: pairs before port selection.
  std::int64_t lattice_pair_count = 0;
};

// Undirected 2D layered lattice graph with L*c + 1 layers. q = 0 picks
// q = |V_2(step_radius)|. Port i uses corner i mod |V| and the smallest
// source whose source and sink are both unused; throws Infeasible when q
// distinct ports cannot be found.
InnerGraph build_inner_graph(int c, int L, int q = 0, const ResourceLimits& limits = default_limits());

struct OuterGraph {
  Instance instance;
  int q = 0;
  int L = 0;
  std::int64_t radius = 0;
  // First q corners of V_3(radius) in canonical order.
  VectorSet subset;
};

// Undirected 3D layered lattice graph with L+1 layers, layer k radius
// (L + k) * radius, radius minimal with |V_3(radius)| >= q.
OuterGraph build_outer_graph(int q, int L, const ResourceLimits& limits = default_limits());

// Replaces every interior outer vertex by a private copy of the inner graph,
// wiring the edge that arrives along corner i to input port i and the edge
// that leaves along corner i to output port i, then subdivides every edge
// inherited from the outer graph into L/2 edges.
Instance substitute_inner(const OuterGraph& outer, const InnerGraph& inner, int L,
                          const ResourceLimits& limits = default_limits());

struct InnerOuterParams {
  // Density budget of the spanner size bound. Recorded, not used in the build.
  std::string c0 = "2";
  int c = 1;
  int L = 2;
  // 0 selects the inner graph's default port count.
  int q = 0;
};

struct ImprovedSpanner {
  Instance instance;
  InnerGraph inner;
  OuterGraph outer;
  // ceil(|V| / (L * (L-1)/2 * |P|)), measured on the built instance.
  std::int64_t lambda = 0;
};

ImprovedSpanner build_improved_spanner(const InnerOuterParams& params,
                                       const ResourceLimits& limits = default_limits());

}  // namespace lbg
