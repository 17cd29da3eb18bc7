#pragma once

// Exact verification primitives. Everything here is recomputed from the graph
// by breadth-first search; nothing trusts a construction's own bookkeeping.

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "lbg/graph.hpp"

namespace lbg {

enum class CountClass : std::uint8_t { zero, one, many };

const char* to_string(CountClass c);

struct PathCountResult {
  std::int32_t dist = kUnreachable;
  CountClass count_class = CountClass::zero;
};

PathCountResult count_shortest_paths(const LayeredGraph& g, VertexId u, VertexId v, const EdgeMask* mask = nullptr);

struct Violation {
  // Pair ids involved; b is -1 for single-pair violations.
  std::int64_t a = -1;
  std::int64_t b = -1;
  std::string message;
};

struct VerificationReport {
  std::string name;
  std::int64_t checked = 0;
  std::int64_t failures = 0;
  // First kMaxListed violations in pair-id order.
  std::vector<Violation> violations;

  static constexpr std::size_t kMaxListed = 50;

  bool passed() const { return failures == 0; }
  void fail(std::int64_t a, std::int64_t b, std::string message);
};

// edge_disjoint is used for the substitution product, whose port paths may
// share vertices inside an inner copy.
enum class DisjointMode : std::uint8_t { edge_and_vertex, edge_overlap_le_1, clique_edge_unique, edge_disjoint };

const char* to_string(DisjointMode m);
DisjointMode disjoint_mode_from_string(const std::string& s);
// Mode each construction's pairs are expected to satisfy.
DisjointMode default_disjoint_mode(InstanceKind kind);

VerificationReport audit_pair_disjointness(const LayeredGraph& g, const PairSet& pairs, DisjointMode mode);

// Each canonical path is a walk from source to target of expected_length edges.
VerificationReport audit_canonical_paths(const LayeredGraph& g, const PairSet& pairs);

// Each pair has exactly one shortest path, of length expected_length.
VerificationReport audit_unique_shortest_paths(const LayeredGraph& g, const PairSet& pairs);

// dist(source, target) for every pair, or kUnreachable. Sources are searched
// once each, optionally only up to `stop_depth`.
std::vector<std::int32_t> pair_distances(const LayeredGraph& g, const PairSet& pairs, const EdgeMask* mask = nullptr,
                                         std::int32_t stop_depth = std::numeric_limits<std::int32_t>::max());

// The four structural conditions on an inner graph with q ports and Lc+1
// layers: |V| <= qL; at least q pairs; unique shortest paths of length Lc;
// edge-disjoint pairs with dist(source_i, target_j) >= Lc. A fifth report
// checks |E| >= cqL.
std::vector<VerificationReport> audit_inner_conditions(const LayeredGraph& g, const PairSet& ports, int c, int L,
                                                       int q);

// Transitive-closure membership for small graphs, one bitset row per vertex.
class ReachabilityIndex {
 public:
  explicit ReachabilityIndex(const LayeredGraph& g, const ResourceLimits& limits = default_limits());
  bool reachable(VertexId u, VertexId v) const {
    return (rows_[static_cast<std::size_t>(u) * words_ + (v >> 6)] >> (v & 63)) & 1U;
  }

 private:
  std::size_t words_ = 0;
  std::vector<std::uint64_t> rows_;
};

struct ShortcutSet {
  std::vector<std::pair<VertexId, VertexId>> edges;

  std::size_t size() const { return edges.size(); }
};

// g plus E' as shortcut-kind edges. Self-loops and pairs already adjacent
// are dropped from the graph; they never shorten a path.
LayeredGraph apply_shortcuts(const LayeredGraph& g, const ShortcutSet& sc);

struct ShortcutAccounting {
  std::int64_t shortcuts = 0;
  // Shortcuts that jump at least two edges along some canonical path.
  std::int64_t useful = 0;
  std::int64_t improved = 0;
  std::vector<std::int64_t> improved_pairs;
  // dist in G + E' per pair.
  std::vector<std::int32_t> distances;
  VerificationReport report;
};

// Adds E' to g and re-measures every pair. Throws InvalidArgument if a
// shortcut endpoint is out of range or not reachable from the other.
ShortcutAccounting shortcut_accounting(const LayeredGraph& g, const PairSet& pairs, const ShortcutSet& sc,
                                       const ReachabilityIndex* reach = nullptr);

struct SpannerSubgraph {
  // Indexed by host edge id.
  EdgeMask alive;

  std::int64_t size() const;
  static SpannerSubgraph full(const LayeredGraph& g) { return {EdgeMask(g.edge_count(), 1)}; }
};

struct WeightedEdge {
  VertexId u = 0;
  VertexId v = 0;
  std::int64_t w = 1;

  bool operator==(const WeightedEdge&) const = default;
};

struct WeightedEmulator {
  std::vector<WeightedEdge> edges;

  std::size_t size() const { return edges.size(); }
};

inline constexpr std::int64_t kInfinite = std::numeric_limits<std::int64_t>::max();

struct StretchResult {
  // kInfinite if some pair is disconnected in the candidate.
  std::int64_t max_stretch = 0;
  std::int64_t worst_pair = -1;
  std::vector<std::int64_t> base_dist;
  std::vector<std::int64_t> candidate_dist;
  // candidate_dist - base_dist, or kInfinite.
  std::vector<std::int64_t> stretch;
  std::int64_t disconnected = 0;
  VerificationReport report;
};

StretchResult additive_stretch(const LayeredGraph& g, const SpannerSubgraph& h, const PairSet& pairs);

// Also checks dist_H >= dist_G on every pair. Throws InvalidArgument for an
// edge lighter than the distance it spans.
StretchResult additive_stretch(const LayeredGraph& g, const WeightedEmulator& em, const PairSet& pairs);

// Stretch of a spanner over every ordered pair connected in g. Throws
// ResourceLimit above the oracle vertex budget.
StretchResult all_pairs_stretch(const LayeredGraph& g, const SpannerSubgraph& h,
                                const ResourceLimits& limits = default_limits());

// Shortest paths in a weighted emulator from `source`, kInfinite if unreached.
std::vector<std::int64_t> emulator_distances(const LayeredGraph& g, const WeightedEmulator& em, VertexId source);

// Lexicographically least shortest u-v path in g as vertex ids.
std::vector<VertexId> canonical_shortest_path(const LayeredGraph& g, VertexId u, VertexId v);

struct EmulatorConversion {
  SpannerSubgraph spanner;
  std::vector<std::int64_t> emulator_dist;
  std::vector<std::int64_t> spanner_dist;
  std::vector<std::int64_t> skipped_pairs;
  std::int64_t clique_edges = 0;
  std::int64_t clique_bound = 0;
  VerificationReport report;
};

// Expands each pair's emulator shortest path into G, one canonical shortest
// path per emulator edge, and checks dist_H' = dist_em on every pair and
// |clique edges of H'| <= 2D |em|. Pairs the emulator disconnects are skipped.
EmulatorConversion emulator_to_spanner(const LayeredGraph& g, const WeightedEmulator& em, const PairSet& pairs,
                                       std::int64_t D);

struct DistanceTable {
  std::int64_t n = 0;
  std::vector<std::int32_t> dist;

  std::int32_t at(VertexId u, VertexId v) const { return dist[static_cast<std::size_t>(u) * n + v]; }
};

DistanceTable all_pairs_small_oracle(const LayeredGraph& g, const ResourceLimits& limits = default_limits());

std::int64_t count_edges_of_kind(const LayeredGraph& g, EdgeKind kind, const EdgeMask* mask = nullptr);

}  // namespace lbg
