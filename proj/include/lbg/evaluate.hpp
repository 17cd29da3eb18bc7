#pragma once

// Experiment harness: building named instances, budget resolution, baseline
// candidates, the shortcut/spanner/emulator/compression experiments, and
// parameter sweeps. Every number a report carries is recomputed by oracles.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "lbg/graph.hpp"
#include "lbg/graphs.hpp"
#include "lbg/oracles.hpp"
#include "lbg/report.hpp"
#include "lbg/transforms.hpp"

namespace lbg {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  // Accepts "3", "3/2" and "0.25". Result is reduced with den > 0.
  static Rational parse(const std::string& s);
  std::string to_string() const;
  bool operator==(const Rational&) const = default;
};

enum class BudgetKind : std::uint8_t { vertex_linear, edge_linear, exponent };

const char* to_string(BudgetKind k);

struct Budget {
  BudgetKind kind = BudgetKind::vertex_linear;
  Rational multiplier{1, 1};
  Rational epsilon{0, 1};

  // floor(multiplier * n), floor(multiplier * m) or floor(multiplier *
  // n^(1+epsilon)), computed exactly.
  std::int64_t resolve(std::int64_t n, std::int64_t m) const;
  // kind[:multiplier[:epsilon]], kind in {vertex, edge, exponent} or the full
  // enum names.
  static Budget parse(const std::string& s);
  std::string to_string() const;
};

struct InstanceParams {
  InstanceKind kind = InstanceKind::base;
  int d = 2;
  int r = 1;
  int D = 1;
  int d1 = 2;
  int r1 = 1;
  int d2 = 2;
  int r2 = 1;
  // Spanner subdivision factor; 0 means t = D.
  int t = 0;
  int c = 1;
  int L = 2;
  int q = 0;
  std::string c0 = "2";
  // Base and product only; the spanner family is always undirected.
  Orientation orientation = Orientation::directed;
};

struct BuiltInstance {
  Instance instance;
  InstanceParams params;
  // Manifest parameter block in stable order (d, r, D, R, delta1, ...).
  Fields fields;

  // Path scale the lemmas are stated in: D for base/product/spanner, L for the
  // substitution family.
  std::int64_t path_scale() const;
  std::int64_t subdivision() const;
};

BuiltInstance build_instance(const InstanceParams& params, const ResourceLimits& limits = default_limits());

// Inverse of the manifest parameter block; unknown keys are ignored.
InstanceParams params_from_fields(InstanceKind kind, const Fields& fields);

// Samples k distinct vertices and returns every ordered pair (u, v), u != v,
// of the sample with v reachable from u.
ShortcutSet trivial_shortcuts(const LayeredGraph& g, std::int64_t k, std::uint64_t seed);
// `count` shortcuts between two vertices of one canonical path, in path order.
ShortcutSet random_path_shortcuts(const Instance& inst, std::int64_t count, std::uint64_t seed);
// One source-to-target shortcut for each of `count` distinct random pairs.
ShortcutSet useful_path_shortcuts(const Instance& inst, std::int64_t count, std::uint64_t seed);

// Copy of G without the first `count` clique edges of pair's canonical path.
SpannerSubgraph drop_path_clique_edges(const Instance& inst, std::int64_t pair, std::int64_t count);
// Copy of G without the k-th inherited edge of pair's canonical path.
SpannerSubgraph drop_path_inherited_edge(const Instance& inst, std::int64_t pair, std::int64_t k = 0);

// One exact edge per critical pair.
WeightedEmulator exact_pair_emulator(const Instance& inst);
// Edges between two vertices of one canonical path, weighted by their gap.
WeightedEmulator random_path_emulator(const Instance& inst, std::int64_t count, std::uint64_t seed);
// Edges between random critical endpoints, weighted by the graph distance.
WeightedEmulator random_endpoint_emulator(const Instance& inst, std::int64_t count, std::uint64_t seed);
// Edges between random vertices of the canonical paths, weighted by the graph
// distance. Unreachable draws are retried.
WeightedEmulator random_vertex_emulator(const Instance& inst, std::int64_t count, std::uint64_t seed);
// `count` random canonical paths, each cut at random points into exact
// segments, so every chosen pair stays connected in the emulator.
WeightedEmulator random_cover_emulator(const Instance& inst, std::int64_t count, std::uint64_t seed);

template <class T>
struct Candidate {
  std::string description;
  std::function<T(const BuiltInstance&, std::int64_t allowance)> make;
};

using ShortcutCandidate = Candidate<ShortcutSet>;
using SpannerCandidate = Candidate<SpannerSubgraph>;
using EmulatorCandidate = Candidate<WeightedEmulator>;

ExperimentReport run_shortcut_experiment(const BuiltInstance& inst, const Budget& budget,
                                         const ShortcutCandidate& candidate);
ExperimentReport run_spanner_experiment(const BuiltInstance& inst, const Budget& budget,
                                        const SpannerCandidate& candidate);
ExperimentReport run_emulator_experiment(const BuiltInstance& inst, const Budget& budget,
                                         const EmulatorCandidate& candidate);

// Clique edges on the canonical paths of the pairs in T removed.
EdgeMask gT_mask(const LayeredGraph& g, const PairSet& pairs, std::span<const std::int64_t> T);
LayeredGraph build_gT(const LayeredGraph& g, const PairSet& pairs, std::span<const std::int64_t> T);

struct GTAudit {
  std::vector<std::int64_t> base_dist;
  std::vector<std::int64_t> gt_dist;
  VerificationReport report;
};

// dist_{G_T} >= dist_G + 2D on T and = dist_G elsewhere.
GTAudit audit_gT(const Instance& inst, std::span<const std::int64_t> T, std::int64_t D);

struct GTFamilyAudit {
  std::int64_t subsets = 0;
  std::int64_t distinct_vectors = 0;
  VerificationReport contract;
  VerificationReport distinct;
};

// Every subset of the (at most 16) pairs: contract plus pairwise-distinct
// distance vectors.
GTFamilyAudit audit_gT_family(const Instance& inst, std::int64_t D);

ExperimentReport run_compress_experiment(const BuiltInstance& inst, std::span<const std::int64_t> T,
                                         const std::string& description);

// Keeps the first `count` pairs only.
Instance trim_pairs(const Instance& inst, std::size_t count);

struct SweepSpec {
  std::vector<InstanceParams> instances;
  std::vector<Budget> budgets;
  // shortcut (trivial baseline sized to the allowance), spanner (full graph)
  // or emulator (exact pair edges).
  std::string experiment = "shortcut";
  std::uint64_t seed = 1;
  // 0 means hardware concurrency.
  unsigned threads = 0;
};

// Cells in grid order (instance-major). A cell that exceeds the resource
// budget yields a resource-limit report and the sweep continues.
std::vector<ExperimentReport> sweep(const SweepSpec& spec, const ResourceLimits& limits = default_limits());

// One row per cell with the headline counts, for offline fitting.
Table sweep_table(const std::vector<ExperimentReport>& reports);

}  // namespace lbg
