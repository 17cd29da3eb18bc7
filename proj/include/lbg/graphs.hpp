#pragma once

// Base layered graphs G(d, r, D) and the alternation product of two of them.

#include <cstdint>

#include "lbg/graph.hpp"
#include "lbg/lattice.hpp"

namespace lbg {

enum class Orientation : std::uint8_t { directed, undirected };

struct BaseGraphParams {
  int d = 2;
  int r = 1;
  int D = 1;
  Orientation orientation = Orientation::directed;

  // Layer-0 radius; layer k uses R + k*r.
  std::int64_t R() const { return static_cast<std::int64_t>(d) * r * D; }
  void validate() const;
};

// Layer k holds B_d(R + k r); every vertex below the top layer gets one edge
// per corner vector of V_d(r). Vertex ids are layer-major then lexicographic;
// edge ids follow (source id, vector index). Pairs are ordered by (a, v).
Instance build_base(const BaseGraphParams& params, const ResourceLimits& limits = default_limits());

// G1 (x) G2 with 2D+1 layers. Even layers step x by V_{d1}(r1), odd layers
// step y by V_{d2}(r2). Both factors must share D; each factor's own
// orientation is ignored in favour of `orientation`.
Instance alternation_product(const BaseGraphParams& g1, const BaseGraphParams& g2, Orientation orientation,
                             const ResourceLimits& limits = default_limits());

// Maximum distance over ordered pairs (u, v), u != v, with v reachable from u.
std::int64_t transitive_closure_diameter(const LayeredGraph& g);

// Shared layered-lattice generator behind the base, inner and outer graphs:
// layer k holds B_d(layer_radius_sq[k]), each vertex below the top gets one
// edge per vector in `steps`, and the pair set is {(a, a + L v) : a in layer
// 0, v in steps} with L = number of layers - 1. `steps` must be strictly
// convex for the pairs to have unique paths.
Instance build_layered_lattice(int d, std::span<const std::int64_t> layer_radius_sq, const VectorSet& steps,
                               Orientation orientation, InstanceKind kind,
                               const ResourceLimits& limits = default_limits());

}  // namespace lbg
