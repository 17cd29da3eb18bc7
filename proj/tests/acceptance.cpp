// Acceptance suite: one line per criterion. `--criterion N` runs one of them;
// with no arguments all nine run. Exit status is 0 iff every selected
// criterion passed.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "lbg/cli.hpp"
#include "lbg/evaluate.hpp"
#include "lbg/io.hpp"
#include "lbg/rng.hpp"

using namespace lbg;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(double x, int digits = 4) {
  std::ostringstream ss;
  ss.setf(std::ios::fixed);
  ss.precision(digits);
  ss << x;
  return ss.str();
}

void fail(Outcome& o, const std::string& why) {
  o.pass = false;
  if (!o.detail.empty()) o.detail += "; ";
  o.detail += why;
}

void note(Outcome& o, const std::string& what) {
  if (!o.detail.empty()) o.detail += "; ";
  o.detail += what;
}

std::int32_t bfs_dist(const LayeredGraph& g, VertexId s, VertexId t, const EdgeMask& mask) {
  Bfs bfs(g);
  bfs.run(s, &mask);
  return bfs.dist(t);
}

// Geometry: hull corners against the exact LP oracle for every r <= 30, and
// the growth exponent over [10, 100].
Outcome criterion1() {
  Outcome o;
  std::int64_t discrepancies = 0, checked = 0, by_lp = 0;
  for (std::int64_t r = 1; r <= 30; ++r) {
    const BallSpec spec = BallSpec::of_radius(2, r);
    const auto ball = enumerate_ball(spec);
    const auto corners = hull_corners(spec);
    // p is the midpoint of p-e and p+e, so only points missing such a pair on
    // every axis can be extreme; the LP runs over those.
    auto inside = [&](const LatticePoint& v) { return v.norm_sq() <= spec.radius_sq; };
    std::vector<LatticePoint> shell;
    for (const auto& p : ball) {
      bool interior = false;
      for (int i = 0; i < 2 && !interior; ++i) {
        LatticePoint lo = p, hi = p;
        --lo.coords[i], ++hi.coords[i];
        interior = inside(lo) && inside(hi);
      }
      if (interior) {
        ++checked;
        if (corners.index_of(p) >= 0) ++discrepancies;
      } else {
        shell.push_back(p);
      }
    }
    for (const auto& p : shell) {
      ++checked, ++by_lp;
      if (is_extreme(p, shell) != (corners.index_of(p) >= 0)) ++discrepancies;
    }
  }
  if (discrepancies != 0) fail(o, std::to_string(discrepancies) + " discrepancies");
  note(o, std::to_string(checked) + " ball points over r=1..30, " + std::to_string(by_lp) + " decided by LP, " +
              std::to_string(discrepancies) + " discrepancies");
  const auto profile = corner_growth_profile(2, 10, 100);
  const double slope = loglog_slope(profile);
  note(o, "log-log slope over r=10..100 = " + fmt(slope));
  if (!(slope >= 0.5 && slope <= 0.85)) fail(o, "slope outside [0.5, 0.85]");
  return o;
}

// Base graphs over {2,3} x {1,2} x {1,2,3}.
Outcome criterion2() {
  Outcome o;
  int built = 0, skipped = 0;
  for (int d : {2, 3}) {
    for (int r : {1, 2}) {
      for (int D : {1, 2, 3}) {
        const std::string tag = "(" + std::to_string(d) + "," + std::to_string(r) + "," + std::to_string(D) + ")";
        Instance inst;
        try {
          inst = build_base({d, r, D});
        } catch (const ResourceLimit&) {
          ++skipped;
          continue;
        }
        ++built;
        const auto& g = inst.graph;
        for (const auto& cp : inst.pairs.pairs) {
          if (cp.expected_length != D) {
            fail(o, tag + " expected length differs from D");
            break;
          }
        }
        const auto canon = audit_canonical_paths(g, inst.pairs);
        const auto uniq = audit_unique_shortest_paths(g, inst.pairs);
        const auto disj = audit_pair_disjointness(g, inst.pairs, DisjointMode::edge_and_vertex);
        if (!canon.passed()) fail(o, tag + " canonical paths: " + std::to_string(canon.failures));
        if (!uniq.passed()) fail(o, tag + " unique paths: " + std::to_string(uniq.failures));
        if (!disj.passed()) fail(o, tag + " disjointness: " + std::to_string(disj.failures));
        const std::int64_t R = static_cast<std::int64_t>(d) * r * D;
        const std::int64_t expect =
            ball_size(BallSpec::of_radius(d, R)) * static_cast<std::int64_t>(hull_corners(BallSpec::of_radius(d, r)).size());
        if (static_cast<std::int64_t>(inst.pairs.size()) != expect) fail(o, tag + " |P| formula mismatch");
        if (d == 2 && r == 1 && D == 2) {
          note(o, "(2,1,2): n=" + std::to_string(g.vertex_count()) + " m=" + std::to_string(g.edge_count()) +
                      " |P|=" + std::to_string(inst.pairs.size()));
          if (g.vertex_count() != 243 || g.edge_count() != 520 || inst.pairs.size() != 196) {
            fail(o, "(2,1,2) counts differ from 243/520/196");
          }
        }
      }
    }
  }
  note(o, std::to_string(built) + " instances audited, " + std::to_string(skipped) + " over budget");
  return o;
}

// Shortcut accounting with 1000 seeded sets per instance.
Outcome criterion3() {
  Outcome o;
  const BaseGraphParams bp{2, 1, 2};
  const BaseGraphParams pp{2, 1, 1};
  const std::pair<std::string, Instance> cases[] = {
      {"base(2,1,2)", build_base(bp)},
      {"product(D=1)", alternation_product(pp, pp, Orientation::directed)},
  };
  for (const auto& [name, inst] : cases) {
    const ReachabilityIndex reach(inst.graph);
    const std::int64_t P = static_cast<std::int64_t>(inst.pairs.size());
    std::int64_t worst_retained = P, most_improved = 0, violations = 0;
    for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
      Rng rng(seed);
      // Half the trials stress the tight case: |P|-1 source-to-target jumps.
      const ShortcutSet sc = seed % 2 == 0 ? useful_path_shortcuts(inst, P - 1, rng.next())
                                           : random_path_shortcuts(inst, P - 1, rng.next());
      const auto acc = shortcut_accounting(inst.graph, inst.pairs, sc, &reach);
      if (acc.improved > static_cast<std::int64_t>(sc.size()) || !acc.report.passed()) ++violations;
      std::int64_t retained = 0;
      for (std::int64_t p = 0; p < P; ++p) retained += acc.distances[p] == inst.pairs.pairs[p].expected_length;
      if (retained == 0) ++violations;
      worst_retained = std::min(worst_retained, retained);
      most_improved = std::max(most_improved, acc.improved);
    }
    note(o, name + ": 1000 trials with |E'|=" + std::to_string(P - 1) + ", max improved " +
                std::to_string(most_improved) + ", min pairs at full distance " + std::to_string(worst_retained));
    if (violations != 0) fail(o, name + ": " + std::to_string(violations) + " violating trials");
  }
  return o;
}

// Exhaustive pairwise overlap scan on the D=1 product.
Outcome criterion4() {
  Outcome o;
  const BaseGraphParams pp{2, 1, 1};
  const Instance inst = alternation_product(pp, pp, Orientation::directed);
  const auto& pairs = inst.pairs.pairs;
  std::int64_t scanned = 0, bad = 0, max_shared = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      ++scanned;
      std::int64_t shared = 0;
      for (EdgeId a : pairs[i].path) {
        for (EdgeId b : pairs[j].path) shared += a == b;
      }
      max_shared = std::max(max_shared, shared);
      if (shared >= 2) ++bad;
    }
  }
  note(o, std::to_string(scanned) + " path pairs scanned, max shared edges " + std::to_string(max_shared));
  if (bad != 0) fail(o, std::to_string(bad) + " path pairs share >= 2 edges");
  return o;
}

struct SeparationTally {
  std::int64_t pairs = 0;
  std::int64_t clique_cases = 0, clique_bad = 0, min_clique_stretch = kInfinite;
  std::int64_t sub_cases = 0, sub_bad = 0, min_sub_stretch = kInfinite;
};

void separation(const Instance& inst, std::int64_t D, std::int64_t t, std::int64_t stride, SeparationTally& s) {
  const auto& g = inst.graph;
  for (std::int64_t p = 0; p < static_cast<std::int64_t>(inst.pairs.size()); p += stride) {
    ++s.pairs;
    const auto& cp = inst.pairs.pairs[p];
    std::int64_t clique_on_path = 0, inherited_on_path = 0;
    for (EdgeId e : cp.path) {
      clique_on_path += g.edge(e).kind == EdgeKind::clique;
      inherited_on_path += g.edge(e).kind == EdgeKind::inherited;
    }
    auto stretch_of = [&](const SpannerSubgraph& h) {
      const auto d = bfs_dist(g, cp.source, cp.target, h.alive);
      return d == kUnreachable ? kInfinite : d - cp.expected_length;
    };
    ++s.clique_cases;
    const auto sc = stretch_of(drop_path_clique_edges(inst, p, clique_on_path));
    s.min_clique_stretch = std::min(s.min_clique_stretch, sc);
    if (sc < 2 * D) ++s.clique_bad;
    for (std::int64_t k = 0; k < inherited_on_path; ++k) {
      ++s.sub_cases;
      const auto ss = stretch_of(drop_path_inherited_edge(inst, p, k));
      s.min_sub_stretch = std::min(s.min_sub_stretch, ss);
      if (ss < 2 * t) ++s.sub_bad;
    }
  }
}

// Spanner separation on the smallest subdivided, clique-replaced product.
Outcome criterion5() {
  Outcome o;
  const SpannerInstance si = build_spanner_instance(2, 1, 2, 1, 1, 1);
  const auto& inst = si.instance;
  const auto& g = inst.graph;
  std::vector<std::int32_t> owner(g.edge_count(), -1);
  std::int64_t shared = 0;
  for (std::size_t p = 0; p < inst.pairs.size(); ++p) {
    for (EdgeId e : inst.pairs.pairs[p].path) {
      if (g.edge(e).kind != EdgeKind::clique) continue;
      if (owner[e] >= 0) ++shared;
      owner[e] = static_cast<std::int32_t>(p);
    }
  }
  note(o, "(a) clique edges on two canonical paths: " + std::to_string(shared));
  if (shared != 0) fail(o, "(a) clique edge shared");

  SeparationTally s;
  separation(inst, 1, si.t, 1, s);
  note(o, "(b) " + std::to_string(s.clique_cases) + " pairs, min stretch " + format_distance(s.min_clique_stretch) +
              " (need >= 2D = 2)");
  note(o, "(c) " + std::to_string(s.sub_cases) + " single-edge deletions, min stretch " +
              format_distance(s.min_sub_stretch) + " (need >= 2t = " + std::to_string(2 * si.t) + ")");
  if (s.clique_bad != 0) fail(o, "(b) " + std::to_string(s.clique_bad) + " violations");
  if (s.sub_bad != 0) fail(o, "(c) " + std::to_string(s.sub_bad) + " violations");

  // Same checks on the D = t = 2 instance, every 97th pair.
  const SpannerInstance s2 = build_spanner_instance(2, 1, 2, 1, 2, 2);
  SeparationTally u;
  separation(s2.instance, 2, 2, 97, u);
  note(o, "D=t=2 sample: " + std::to_string(u.pairs) + " pairs, min clique stretch " +
              format_distance(u.min_clique_stretch) + " (need 4), min subdivision stretch " +
              format_distance(u.min_sub_stretch) + " (need 4)");
  if (u.clique_bad + u.sub_bad != 0) fail(o, "D=t=2 sample: " + std::to_string(u.clique_bad + u.sub_bad) + " violations");
  return o;
}

// Substitution-product contract on the q=4, L=2, c=1 micro instance.
Outcome criterion6() {
  Outcome o;
  const int q = 4, L = 2, c = 1;
  const InnerGraph ig = build_inner_graph(c, L, q);
  const auto reps = audit_inner_conditions(ig.instance.graph, ig.instance.pairs, c, L, q);
  const char* labels[] = {"1 |V_I| <= qL", "2 |P_I| >= q", "3 unique paths of length Lc",
                          "4 edge-disjoint, cross distance >= Lc"};
  for (int i = 0; i < 4; ++i) {
    std::string line = std::string("inner condition ") + labels[i] + ": " + (reps[i].passed() ? "holds" : "fails");
    if (!reps[i].passed() && !reps[i].violations.empty()) line += " (" + reps[i].violations[0].message + ")";
    note(o, line);
    if (!reps[i].passed()) fail(o, "inner condition " + std::to_string(i + 1) + " fails");
  }

  const OuterGraph og = build_outer_graph(q, L);
  const std::int64_t expect_P = ball_size(BallSpec::of_radius(3, L * og.radius)) * q;
  note(o, "outer |P| = " + std::to_string(og.instance.pairs.size()) + ", |B_3(Lr)|*q = " + std::to_string(expect_P));
  if (static_cast<std::int64_t>(og.instance.pairs.size()) != expect_P) fail(o, "outer |P| mismatch");

  InnerOuterParams params;
  params.c = c, params.L = L, params.q = q;
  const ImprovedSpanner is = build_improved_spanner(params);
  const std::int64_t want = L * L / 2 + (L - 1) * L * c;
  const auto dist = pair_distances(is.instance.graph, is.instance.pairs);
  std::int64_t off = 0;
  for (auto d : dist) off += d != want;
  note(o, std::to_string(dist.size()) + " composite paths, " + std::to_string(off) + " with BFS distance != " +
              std::to_string(want));
  if (off != 0) fail(o, "composite path length");
  return o;
}

// Emulator conversion over 100 seeded random emulators on critical-path
// vertices of the micro spanner instance.
Outcome criterion7() {
  Outcome o;
  const SpannerInstance si = build_spanner_instance(2, 1, 2, 1, 1, 1);
  const auto& inst = si.instance;
  const std::int64_t D = 1, P = static_cast<std::int64_t>(inst.pairs.size());
  const auto base = pair_distances(inst.graph, inst.pairs);
  std::int64_t trials_unequal = 0, pairs_compared = 0, pairs_unequal = 0, bound_bad = 0, clique_bad = 0;
  std::int64_t example_pair = -1, example_h = 0, example_em = 0;
  std::uint64_t example_seed = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Rng rng(seed);
    const std::int64_t size = rng.between(P / 4, 2 * P);
    const auto em = random_vertex_emulator(inst, size, rng.next());
    const auto conv = emulator_to_spanner(inst.graph, em, inst.pairs, D);
    if (conv.clique_edges > 2 * D * static_cast<std::int64_t>(em.size())) ++clique_bad;
    bool unequal = false;
    for (std::int64_t p = 0; p < P; ++p) {
      if (conv.emulator_dist[p] == kInfinite) continue;
      ++pairs_compared;
      if (conv.spanner_dist[p] != conv.emulator_dist[p]) {
        ++pairs_unequal;
        if (!unequal && example_pair < 0) {
          example_pair = p, example_seed = seed;
          example_h = conv.spanner_dist[p], example_em = conv.emulator_dist[p];
        }
        unequal = true;
      }
      if (conv.spanner_dist[p] > conv.emulator_dist[p] || conv.spanner_dist[p] < base[p]) ++bound_bad;
    }
    trials_unequal += unequal;
  }
  note(o, "dist_H' = dist_em on " + std::to_string(pairs_compared - pairs_unequal) + "/" +
              std::to_string(pairs_compared) + " connected pairs; " + std::to_string(trials_unequal) +
              "/100 trials have a mismatch");
  if (example_pair >= 0) {
    note(o, "e.g. seed " + std::to_string(example_seed) + " pair " + std::to_string(example_pair) + ": dist_H'=" +
                std::to_string(example_h) + " dist_em=" + std::to_string(example_em));
  }
  note(o, "dist_G <= dist_H' <= dist_em violated on " + std::to_string(bound_bad) + " pairs");
  note(o, "clique bound 2D|em| exceeded in " + std::to_string(clique_bad) + "/100 trials");
  if (pairs_unequal != 0) fail(o, "equality dist_H' = dist_em does not hold");
  if (bound_bad != 0) fail(o, "distance sandwich violated");
  if (clique_bad != 0) fail(o, "clique bound exceeded");
  return o;
}

// G_T family over every subset of 12 pairs.
Outcome criterion8() {
  Outcome o;
  const SpannerInstance si = build_spanner_instance(2, 1, 2, 1, 1, 1);
  const Instance small = trim_pairs(si.instance, 12);
  const auto fam = audit_gT_family(small, 1);
  note(o, std::to_string(fam.subsets) + " subsets, " + std::to_string(fam.distinct_vectors) +
              " distinct distance vectors, contract failures " + std::to_string(fam.contract.failures));
  if (fam.subsets != 4096) fail(o, "wrong subset count");
  if (!fam.contract.passed()) fail(o, "contract violated");
  if (!fam.distinct.passed() || fam.distinct_vectors != fam.subsets) fail(o, "distance vectors collide");
  return o;
}

int cli(const std::vector<std::string>& args, std::string& out) {
  std::ostringstream so, se;
  const int code = run_cli(args, so, se);
  out = so.str() + se.str();
  return code;
}

std::string slurp_dir(const fs::path& dir) {
  std::string all;
  for (const char* f : {"graph.txt", "labels.txt", "pairs.txt", "manifest.txt"}) all += read_file(dir / f);
  return all;
}

// Identical flags and seed give bit-identical files and reports.
Outcome criterion9() {
  Outcome o;
  const fs::path root = fs::temp_directory_path() / "lbg_acceptance_repro";
  fs::remove_all(root);
  const std::vector<std::vector<std::string>> gens = {
      {"generate", "base", "--d", "2", "--r", "1", "--D", "2"},
      {"generate", "product", "--D", "1"},
      {"generate", "spanner", "--D", "1", "--t", "1"},
      {"generate", "inner", "--q", "4"},
      {"generate", "outer", "--q", "4"},
      {"generate", "improved-spanner", "--q", "4"},
  };
  int checked = 0;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::string a_out, b_out;
    auto a = gens[i], b = gens[i];
    a.insert(a.end(), {"--out", (root / ("a" + std::to_string(i))).string()});
    b.insert(b.end(), {"--out", (root / ("b" + std::to_string(i))).string()});
    const int ca = cli(a, a_out), cb = cli(b, b_out);
    ++checked;
    if (ca != 0 || cb != 0 || a_out != b_out ||
        slurp_dir(root / ("a" + std::to_string(i))) != slurp_dir(root / ("b" + std::to_string(i)))) {
      fail(o, gens[i][1] + " instance files differ");
    }
  }
  const std::string base = (root / "a0").string(), span = (root / "a2").string();
  const std::vector<std::vector<std::string>> evals = {
      {"eval", "shortcut", base, "--baseline", "trivial", "--seed", "3"},
      {"eval", "shortcut", base, "--baseline", "random", "--size", "150", "--seed", "3"},
      {"eval", "spanner", span, "--candidate", "drop-clique:11", "--budget", "edge"},
      {"eval", "emulator", span, "--candidate", "random-vertex:3000", "--seed", "8", "--budget", "edge"},
      {"eval", "compress", span, "--T", "0,5,9"},
      {"sweep", "--construction", "base", "--D", "1,2", "--budget", "vertex,exponent:1:1/10", "--threads", "2",
       "--seed", "4"},
      {"verify", span},
  };
  for (const auto& e : evals) {
    std::string x, y;
    const int cx = cli(e, x), cy = cli(e, y);
    ++checked;
    if (cx != cy || x != y) fail(o, e[0] + " " + e[1] + " output differs between runs");
  }
  fs::remove_all(root);
  note(o, std::to_string(checked) + " commands run twice, outputs compared byte for byte");
  return o;
}

struct Criterion {
  int id;
  double limit_s;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, 60, criterion1}, {2, 120, criterion2}, {3, 300, criterion3}, {4, 60, criterion4}, {5, 120, criterion5},
      {6, 120, criterion6}, {7, 120, criterion7}, {8, 600, criterion8}, {9, 120, criterion9},
  };
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: lbg_acceptance [--criterion N]\n";
      return 1;
    }
  }
  bool ok = true;
  for (const auto& c : all) {
    if (only != 0 && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= c.limit_s) fail(out, "runtime over limit");
    ok = ok && out.pass;
    std::cout << "criterion " << c.id << ": " << (out.pass ? "PASS" : "FAIL") << " [" << fmt(secs, 1) << "s / "
              << fmt(c.limit_s, 0) << "s] " << out.detail << std::endl;
  }
  return ok ? 0 : 1;
}
