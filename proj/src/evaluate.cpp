#include "lbg/evaluate.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <thread>

#include "internal.hpp"
#include "lbg/rng.hpp"

namespace lbg {

namespace {

std::int64_t parse_int(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw InvalidArgument("bad " + what + " '" + s + "'");
  return v;
}

std::int64_t clamp_to_int64(const mpz_class& z) {
  if (z > mpz_class(std::to_string(std::numeric_limits<std::int64_t>::max()))) {
    return std::numeric_limits<std::int64_t>::max();
  }
  return std::stoll(z.get_str());
}

std::vector<std::vector<VertexId>> walks_of(const Instance& inst) {
  std::vector<std::vector<VertexId>> w;
  w.reserve(inst.pairs.size());
  for (const auto& cp : inst.pairs.pairs) w.push_back(walk_path(inst.graph, cp.source, cp.path));
  return w;
}

std::pair<std::size_t, std::size_t> two_positions(Rng& rng, std::size_t len) {
  std::size_t i = rng.below(len), j = rng.below(len - 1);
  if (j >= i) ++j;
  return {std::min(i, j), std::max(i, j)};
}

Fields report_instance_fields(const BuiltInstance& inst) {
  Fields f{{"kind", to_string(inst.params.kind)}};
  f.insert(f.end(), inst.fields.begin(), inst.fields.end());
  f.emplace_back("n", std::to_string(inst.instance.graph.vertex_count()));
  f.emplace_back("m", std::to_string(inst.instance.graph.edge_count()));
  f.emplace_back("pairs", std::to_string(inst.instance.pairs.size()));
  return f;
}

ExperimentReport start_report(const std::string& experiment, const BuiltInstance& inst, const Budget& budget,
                              const std::string& candidate) {
  ExperimentReport rep;
  rep.experiment = experiment;
  rep.instance = report_instance_fields(inst);
  rep.budget = budget.to_string();
  rep.allowance = budget.resolve(inst.instance.graph.vertex_count(), inst.instance.graph.edge_count());
  rep.candidate = candidate;
  return rep;
}

bool over_budget(ExperimentReport& rep, std::int64_t size) {
  rep.candidate_size = size;
  if (size <= rep.allowance) return false;
  rep.status = ReportStatus::rejected;
  rep.note = "candidate size " + std::to_string(size) + " exceeds allowance " + std::to_string(rep.allowance);
  return true;
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

// Stretch lower bounds forced by the edges H drops from each canonical path:
// 2 per missing clique edge up to 2D, and 2t once any inherited edge is gone.
VerificationReport audit_penalties(const Instance& inst, const SpannerSubgraph& h, const StretchResult& st,
                                   std::int64_t D, std::int64_t t) {
  VerificationReport rep;
  rep.name = "lemma.path_penalty";
  const LayeredGraph& g = inst.graph;
  for (std::size_t p = 0; p < inst.pairs.size(); ++p) {
    std::int64_t clique = 0, inherited = 0;
    for (EdgeId e : inst.pairs.pairs[p].path) {
      if (h.alive[e]) continue;
      if (g.edge(e).kind == EdgeKind::clique) ++clique;
      else if (g.edge(e).kind == EdgeKind::inherited) ++inherited;
    }
    if (clique == 0 && inherited == 0) continue;
    ++rep.checked;
    const std::int64_t need = std::max(2 * std::min(clique, D), inherited > 0 ? 2 * t : 0);
    if (st.stretch[p] < need) {
      rep.fail(static_cast<std::int64_t>(p), -1,
               "stretch " + format_distance(st.stretch[p]) + " below forced " + std::to_string(need) + " (" +
                   std::to_string(clique) + " clique, " + std::to_string(inherited) + " inherited edges missing)");
    }
  }
  return rep;
}

void stretch_metrics(ExperimentReport& rep, const std::string& prefix, const StretchResult& st) {
  rep.metric(prefix + "max_stretch", format_distance(st.max_stretch));
  rep.metric(prefix + "worst_pair", st.worst_pair);
  rep.metric(prefix + "disconnected_pairs", st.disconnected);
}

std::int64_t canonical_clique_kept(const Instance& inst, const EdgeMask& alive) {
  std::int64_t kept = 0;
  for (const auto& cp : inst.pairs.pairs) {
    for (EdgeId e : cp.path) {
      if (alive[e] && inst.graph.edge(e).kind == EdgeKind::clique) ++kept;
    }
  }
  return kept;
}

}  // namespace

Rational Rational::parse(const std::string& s) {
  Rational r;
  const auto slash = s.find('/');
  const auto dot = s.find('.');
  if (slash != std::string::npos) {
    r.num = parse_int(s.substr(0, slash), "rational");
    r.den = parse_int(s.substr(slash + 1), "rational");
  } else if (dot != std::string::npos) {
    const std::string frac = s.substr(dot + 1);
    if (frac.empty() || frac.size() > 15 || frac.find_first_not_of("0123456789") != std::string::npos) {
      throw InvalidArgument("bad rational '" + s + "'");
    }
    const std::string whole = s.substr(0, dot);
    const bool negative = !whole.empty() && whole[0] == '-';
    r.den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) r.den *= 10;
    const std::int64_t w = whole.empty() || whole == "-" ? 0 : parse_int(whole, "rational");
    const std::int64_t f = parse_int(frac, "rational");
    r.num = std::abs(w) * r.den + f;
    if (negative) r.num = -r.num;
  } else {
    r.num = parse_int(s, "rational");
  }
  if (r.den == 0) throw InvalidArgument("rational with zero denominator '" + s + "'");
  if (r.den < 0) {
    r.num = -r.num;
    r.den = -r.den;
  }
  const std::int64_t g = std::gcd(r.num, r.den);
  if (g > 1) {
    r.num /= g;
    r.den /= g;
  }
  return r;
}

std::string Rational::to_string() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

const char* to_string(BudgetKind k) {
  switch (k) {
    case BudgetKind::vertex_linear: return "vertex_linear";
    case BudgetKind::edge_linear: return "edge_linear";
    case BudgetKind::exponent: return "exponent";
  }
  return "?";
}

std::int64_t Budget::resolve(std::int64_t n, std::int64_t m) const {
  const mpz_class p(std::to_string(multiplier.num)), q(std::to_string(multiplier.den));
  switch (kind) {
    case BudgetKind::vertex_linear: return clamp_to_int64(mpz_class(p * n / q));
    case BudgetKind::edge_linear: return clamp_to_int64(mpz_class(p * m / q));
    case BudgetKind::exponent: {
      // floor(p/q * n^((a+b)/b)) = floor(root_b(p^b n^(a+b) / q^b)).
      const auto a = static_cast<unsigned long>(epsilon.num), b = static_cast<unsigned long>(epsilon.den);
      mpz_class num, den, nn(std::to_string(n)), x, root;
      mpz_pow_ui(num.get_mpz_t(), p.get_mpz_t(), b);
      mpz_class np;
      mpz_pow_ui(np.get_mpz_t(), nn.get_mpz_t(), a + b);
      num *= np;
      mpz_pow_ui(den.get_mpz_t(), q.get_mpz_t(), b);
      mpz_fdiv_q(x.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
      mpz_root(root.get_mpz_t(), x.get_mpz_t(), b);
      return clamp_to_int64(root);
    }
  }
  return 0;
}

Budget Budget::parse(const std::string& s) {
  Budget b;
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto colon = s.find(':', start);
    parts.push_back(s.substr(start, colon == std::string::npos ? std::string::npos : colon - start));
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  if (parts.size() > 3) throw InvalidArgument("bad budget '" + s + "'");
  const std::string& k = parts[0];
  if (k == "vertex" || k == "vertex_linear") b.kind = BudgetKind::vertex_linear;
  else if (k == "edge" || k == "edge_linear") b.kind = BudgetKind::edge_linear;
  else if (k == "exponent") b.kind = BudgetKind::exponent;
  else throw InvalidArgument("unknown budget kind '" + k + "'");
  if (parts.size() > 1) b.multiplier = Rational::parse(parts[1]);
  if (parts.size() > 2) b.epsilon = Rational::parse(parts[2]);
  if (b.multiplier.num < 0) throw InvalidArgument("budget multiplier must be >= 0");
  if (b.epsilon.num < 0) throw InvalidArgument("budget epsilon must be >= 0");
  if (b.kind == BudgetKind::exponent && b.epsilon.den > 64) throw InvalidArgument("budget epsilon denominator too large");
  return b;
}

std::string Budget::to_string() const {
  return std::string(lbg::to_string(kind)) + ":" + multiplier.to_string() + ":" + epsilon.to_string();
}

std::int64_t BuiltInstance::path_scale() const {
  switch (params.kind) {
    case InstanceKind::inner: return static_cast<std::int64_t>(params.L) * params.c;
    case InstanceKind::outer:
    case InstanceKind::improved_spanner: return params.L;
    default: return params.D;
  }
}

std::int64_t BuiltInstance::subdivision() const {
  if (params.kind != InstanceKind::spanner) return 1;
  return params.t == 0 ? params.D : params.t;
}

BuiltInstance build_instance(const InstanceParams& params, const ResourceLimits& limits) {
  BuiltInstance out;
  out.params = params;
  auto& f = out.fields;
  auto put = [&](const char* k, std::int64_t v) { f.emplace_back(k, std::to_string(v)); };
  const char* orient = params.orientation == Orientation::directed ? "directed" : "undirected";
  switch (params.kind) {
    case InstanceKind::base: {
      const BaseGraphParams bp{params.d, params.r, params.D, params.orientation};
      out.instance = build_base(bp, limits);
      put("d", bp.d);
      put("r", bp.r);
      put("D", bp.D);
      put("R", bp.R());
      put("delta", static_cast<std::int64_t>(hull_corners(BallSpec::of_radius(bp.d, bp.r), limits).size()));
      f.emplace_back("orientation", orient);
      break;
    }
    case InstanceKind::product: {
      const BaseGraphParams p1{params.d1, params.r1, params.D, params.orientation};
      const BaseGraphParams p2{params.d2, params.r2, params.D, params.orientation};
      out.instance = alternation_product(p1, p2, params.orientation, limits);
      put("d1", p1.d);
      put("r1", p1.r);
      put("d2", p2.d);
      put("r2", p2.r);
      put("D", params.D);
      put("R1", p1.R());
      put("R2", p2.R());
      put("delta1", static_cast<std::int64_t>(hull_corners(BallSpec::of_radius(p1.d, p1.r), limits).size()));
      put("delta2", static_cast<std::int64_t>(hull_corners(BallSpec::of_radius(p2.d, p2.r), limits).size()));
      f.emplace_back("orientation", orient);
      break;
    }
    case InstanceKind::spanner: {
      const int t = params.t == 0 ? params.D : params.t;
      SpannerInstance si = build_spanner_instance(params.d1, params.r1, params.d2, params.r2, params.D, t, limits);
      out.instance = std::move(si.instance);
      out.params.t = t;
      out.params.orientation = Orientation::undirected;
      put("d1", params.d1);
      put("r1", params.r1);
      put("d2", params.d2);
      put("r2", params.r2);
      put("D", params.D);
      put("R1", si.first.R());
      put("R2", si.second.R());
      put("delta1", si.clique.delta1);
      put("delta2", si.clique.delta2);
      put("t", t);
      f.emplace_back("orientation", "undirected");
      break;
    }
    case InstanceKind::inner: {
      InnerGraph ig = build_inner_graph(params.c, params.L, params.q, limits);
      out.instance = std::move(ig.instance);
      out.params.q = ig.q;
      out.params.orientation = Orientation::undirected;
      put("c", ig.c);
      put("L", ig.L);
      put("q", ig.q);
      put("required_corners", ig.required_corners);
      put("inner_radius", ig.step_radius);
      put("R", ig.base_radius);
      put("lattice_pairs", ig.lattice_pair_count);
      f.emplace_back("orientation", "undirected");
      break;
    }
    case InstanceKind::outer: {
      const int q = params.q == 0 ? 4 : params.q;
      OuterGraph og = build_outer_graph(q, params.L, limits);
      out.instance = std::move(og.instance);
      out.params.q = q;
      out.params.orientation = Orientation::undirected;
      put("q", q);
      put("L", params.L);
      put("outer_radius", og.radius);
      f.emplace_back("orientation", "undirected");
      break;
    }
    case InstanceKind::improved_spanner: {
      Rational::parse(params.c0);
      ImprovedSpanner is = build_improved_spanner(InnerOuterParams{params.c0, params.c, params.L, params.q}, limits);
      out.instance = std::move(is.instance);
      out.params.q = is.inner.q;
      out.params.orientation = Orientation::undirected;
      f.emplace_back("c0", params.c0);
      put("c", params.c);
      put("L", params.L);
      put("q", is.inner.q);
      put("inner_radius", is.inner.step_radius);
      put("outer_radius", is.outer.radius);
      put("t", params.L / 2);
      put("lambda", is.lambda);
      f.emplace_back("orientation", "undirected");
      break;
    }
  }
  return out;
}

InstanceParams params_from_fields(InstanceKind kind, const Fields& fields) {
  InstanceParams p;
  p.kind = kind;
  std::map<std::string, int*> ints{{"d", &p.d},   {"r", &p.r},   {"D", &p.D}, {"d1", &p.d1}, {"r1", &p.r1},
                                   {"d2", &p.d2}, {"r2", &p.r2}, {"c", &p.c}, {"L", &p.L},   {"q", &p.q}};
  for (const auto& [k, v] : fields) {
    if (auto it = ints.find(k); it != ints.end()) *it->second = static_cast<int>(parse_int(v, k));
    else if (k == "t" && kind == InstanceKind::spanner) p.t = static_cast<int>(parse_int(v, k));
    else if (k == "c0") p.c0 = v;
    else if (k == "orientation") p.orientation = v == "directed" ? Orientation::directed : Orientation::undirected;
  }
  return p;
}

ShortcutSet trivial_shortcuts(const LayeredGraph& g, std::int64_t k, std::uint64_t seed) {
  if (k < 0) throw InvalidArgument("sample size k must be >= 0");
  Rng rng(seed);
  auto sample = rng.sample(g.vertex_count(), k);
  std::sort(sample.begin(), sample.end());
  ShortcutSet sc;
  Bfs bfs(g);
  for (auto u : sample) {
    bfs.run(static_cast<VertexId>(u));
    for (auto v : sample) {
      if (u == v || (!g.directed() && v < u)) continue;
      if (bfs.dist(static_cast<VertexId>(v)) != kUnreachable) {
        sc.edges.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
      }
    }
  }
  return sc;
}

ShortcutSet random_path_shortcuts(const Instance& inst, std::int64_t count, std::uint64_t seed) {
  ShortcutSet sc;
  if (inst.pairs.size() == 0 || count <= 0) return sc;
  Rng rng(seed);
  const auto walks = walks_of(inst);
  for (std::int64_t i = 0; i < count; ++i) {
    const auto& w = walks[rng.below(walks.size())];
    if (w.size() < 2) continue;
    const auto [a, b] = two_positions(rng, w.size());
    sc.edges.emplace_back(w[a], w[b]);
  }
  return sc;
}

ShortcutSet useful_path_shortcuts(const Instance& inst, std::int64_t count, std::uint64_t seed) {
  Rng rng(seed);
  ShortcutSet sc;
  for (auto p : rng.sample(static_cast<std::int64_t>(inst.pairs.size()), count)) {
    sc.edges.emplace_back(inst.pairs.pairs[p].source, inst.pairs.pairs[p].target);
  }
  return sc;
}

SpannerSubgraph drop_path_clique_edges(const Instance& inst, std::int64_t pair, std::int64_t count) {
  if (pair < 0 || pair >= static_cast<std::int64_t>(inst.pairs.size())) throw InvalidArgument("unknown pair id");
  SpannerSubgraph h = SpannerSubgraph::full(inst.graph);
  for (EdgeId e : inst.pairs.pairs[pair].path) {
    if (count <= 0) break;
    if (inst.graph.edge(e).kind != EdgeKind::clique) continue;
    h.alive[e] = 0;
    --count;
  }
  return h;
}

SpannerSubgraph drop_path_inherited_edge(const Instance& inst, std::int64_t pair, std::int64_t k) {
  if (pair < 0 || pair >= static_cast<std::int64_t>(inst.pairs.size())) throw InvalidArgument("unknown pair id");
  SpannerSubgraph h = SpannerSubgraph::full(inst.graph);
  for (EdgeId e : inst.pairs.pairs[pair].path) {
    if (inst.graph.edge(e).kind != EdgeKind::inherited) continue;
    if (k-- == 0) {
      h.alive[e] = 0;
      return h;
    }
  }
  throw InvalidArgument("canonical path has too few inherited edges");
}

WeightedEmulator exact_pair_emulator(const Instance& inst) {
  WeightedEmulator em;
  const auto dist = pair_distances(inst.graph, inst.pairs);
  for (std::size_t p = 0; p < inst.pairs.size(); ++p) {
    if (dist[p] == kUnreachable || dist[p] == 0) continue;
    em.edges.push_back({inst.pairs.pairs[p].source, inst.pairs.pairs[p].target, dist[p]});
  }
  return em;
}

WeightedEmulator random_path_emulator(const Instance& inst, std::int64_t count, std::uint64_t seed) {
  WeightedEmulator em;
  if (inst.pairs.size() == 0 || count <= 0) return em;
  Rng rng(seed);
  const auto walks = walks_of(inst);
  for (std::int64_t i = 0; i < count; ++i) {
    const auto& w = walks[rng.below(walks.size())];
    if (w.size() < 2) continue;
    const auto [a, b] = two_positions(rng, w.size());
    // Sub-paths of a unique shortest path are shortest, so the gap is exact.
    em.edges.push_back({w[a], w[b], static_cast<std::int64_t>(b - a)});
  }
  return em;
}

WeightedEmulator random_endpoint_emulator(const Instance& inst, std::int64_t count, std::uint64_t seed) {
  WeightedEmulator em;
  std::vector<VertexId> ends;
  for (const auto& cp : inst.pairs.pairs) {
    ends.push_back(cp.source);
    ends.push_back(cp.target);
  }
  std::sort(ends.begin(), ends.end());
  ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
  if (ends.size() < 2 || count <= 0) return em;
  Rng rng(seed);
  Bfs bfs(inst.graph);
  for (std::int64_t i = 0, tries = 0; i < count && tries < 64 * count; ++tries) {
    const auto [a, b] = two_positions(rng, ends.size());
    bfs.run(ends[a]);
    const auto d = bfs.dist(ends[b]);
    if (d == kUnreachable) continue;
    em.edges.push_back({ends[a], ends[b], d});
    ++i;
  }
  return em;
}

ExperimentReport run_shortcut_experiment(const BuiltInstance& inst, const Budget& budget,
                                         const ShortcutCandidate& candidate) {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentReport rep = start_report("shortcut", inst, budget, candidate.description);
  const LayeredGraph& g = inst.instance.graph;
  const PairSet& pairs = inst.instance.pairs;
  const ShortcutSet sc = candidate.make(inst, rep.allowance);
  if (over_budget(rep, static_cast<std::int64_t>(sc.size()))) return rep;

  const auto acc = shortcut_accounting(g, pairs, sc);
  rep.metric("shortcuts", acc.shortcuts);
  rep.metric("useful_shortcuts", acc.useful);
  rep.metric("improved_pairs", acc.improved);
  rep.metric("retained_pairs", static_cast<std::int64_t>(pairs.size()) - acc.improved);

  std::int64_t expected_diameter = 0;
  for (const auto& cp : pairs.pairs) expected_diameter = std::max(expected_diameter, cp.expected_length);
  const LayeredGraph augmented = apply_shortcuts(g, sc);
  std::int64_t before, after;
  const bool full = g.vertex_count() <= default_limits().max_oracle_vertices;
  if (full) {
    before = transitive_closure_diameter(g);
    after = transitive_closure_diameter(augmented);
  } else {
    before = expected_diameter;
    after = 0;
    for (auto d : acc.distances) after = std::max<std::int64_t>(after, d);
  }
  rep.metric("diameter_scope", full ? "closure" : "pairs");
  rep.metric("diameter_before", before);
  rep.metric("diameter_after", after);
  rep.audit(acc.report);

  VerificationReport lemma;
  lemma.name = "lemma.diameter_retained";
  if (g.directed() && (inst.params.kind == InstanceKind::base || inst.params.kind == InstanceKind::product) &&
      acc.shortcuts < static_cast<std::int64_t>(pairs.size())) {
    lemma.checked = 1;
    if (acc.improved >= static_cast<std::int64_t>(pairs.size())) lemma.fail(-1, -1, "every pair improved");
    if (after != expected_diameter) {
      lemma.fail(-1, -1, "diameter " + std::to_string(after) + " differs from " + std::to_string(expected_diameter));
    }
  }
  rep.audit(std::move(lemma));
  rep.wall_clock_ms = elapsed_ms(t0);
  return rep;
}

ExperimentReport run_spanner_experiment(const BuiltInstance& inst, const Budget& budget,
                                        const SpannerCandidate& candidate) {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentReport rep = start_report("spanner", inst, budget, candidate.description);
  const LayeredGraph& g = inst.instance.graph;
  const PairSet& pairs = inst.instance.pairs;
  const SpannerSubgraph h = candidate.make(inst, rep.allowance);
  if (static_cast<std::int64_t>(h.alive.size()) != g.edge_count()) {
    throw InvalidArgument("candidate is not a subgraph of the instance (edge mask size mismatch)");
  }
  if (over_budget(rep, h.size())) return rep;

  const std::int64_t D = inst.path_scale(), t = inst.subdivision();
  const StretchResult st = additive_stretch(g, h, pairs);
  const std::int64_t kept = canonical_clique_kept(inst.instance, h.alive);
  rep.metric("spanner_edges", h.size());
  rep.metric("clique_edges", count_edges_of_kind(g, EdgeKind::clique, &h.alive));
  rep.metric("canonical_clique_edges_kept", kept);
  rep.metric("clique_threshold", D * static_cast<std::int64_t>(pairs.size()));
  stretch_metrics(rep, "", st);
  rep.audit(st.report);

  if (inst.params.kind == InstanceKind::spanner) {
    rep.audit(audit_penalties(inst.instance, h, st, D, t));
    VerificationReport lemma;
    lemma.name = "lemma.clique_budget";
    if (kept < D * static_cast<std::int64_t>(pairs.size())) {
      lemma.checked = 1;
      if (st.max_stretch < 2 * D) lemma.fail(-1, -1, "no pair with stretch >= 2D despite too few clique edges");
    }
    rep.audit(std::move(lemma));
  }
  if (h.size() == g.edge_count()) {
    VerificationReport whole;
    whole.name = "full_graph_stretch";
    whole.checked = 1;
    if (st.max_stretch != 0) whole.fail(-1, -1, "full graph has nonzero stretch");
    rep.audit(std::move(whole));
  }
  rep.wall_clock_ms = elapsed_ms(t0);
  return rep;
}

WeightedEmulator random_vertex_emulator(const Instance& inst, std::int64_t count, std::uint64_t seed) {
  WeightedEmulator em;
  std::vector<VertexId> pool;
  for (const auto& w : walks_of(inst)) pool.insert(pool.end(), w.begin(), w.end());
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  if (pool.size() < 2 || count <= 0) return em;
  Rng rng(seed);
  Bfs bfs(inst.graph);
  for (std::int64_t i = 0, tries = 0; i < count && tries < 64 * count; ++tries) {
    const auto [a, b] = two_positions(rng, pool.size());
    bfs.run(pool[a]);
    const auto d = bfs.dist(pool[b]);
    if (d == kUnreachable) continue;
    em.edges.push_back({pool[a], pool[b], d});
    ++i;
  }
  return em;
}

WeightedEmulator random_cover_emulator(const Instance& inst, std::int64_t count, std::uint64_t seed) {
  WeightedEmulator em;
  if (inst.pairs.size() == 0 || count <= 0) return em;
  Rng rng(seed);
  const auto walks = walks_of(inst);
  for (auto p : rng.sample(static_cast<std::int64_t>(walks.size()), std::min<std::int64_t>(count, walks.size()))) {
    const auto& w = walks[p];
    std::size_t from = 0;
    for (std::size_t k = 1; k < w.size(); ++k) {
      if (k + 1 == w.size() || rng.below(2) == 0) {
        em.edges.push_back({w[from], w[k], static_cast<std::int64_t>(k - from)});
        from = k;
      }
    }
  }
  return em;
}

ExperimentReport run_emulator_experiment(const BuiltInstance& inst, const Budget& budget,
                                         const EmulatorCandidate& candidate) {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentReport rep = start_report("emulator", inst, budget, candidate.description);
  const LayeredGraph& g = inst.instance.graph;
  const PairSet& pairs = inst.instance.pairs;
  const WeightedEmulator em = candidate.make(inst, rep.allowance);
  if (over_budget(rep, static_cast<std::int64_t>(em.size()))) return rep;

  const std::int64_t D = inst.path_scale(), t = inst.subdivision();
  const StretchResult st = additive_stretch(g, em, pairs);
  rep.metric("emulator_edges", static_cast<std::int64_t>(em.size()));
  stretch_metrics(rep, "emulator.", st);
  rep.audit(st.report);

  const EmulatorConversion conv = emulator_to_spanner(g, em, pairs, D);
  const StretchResult hs = additive_stretch(g, conv.spanner, pairs);
  rep.metric("spanner.edges", conv.spanner.size());
  rep.metric("spanner.clique_edges", conv.clique_edges);
  rep.metric("spanner.clique_bound", conv.clique_bound);
  rep.metric("spanner.skipped_pairs", static_cast<std::int64_t>(conv.skipped_pairs.size()));
  stretch_metrics(rep, "spanner.", hs);
  rep.audit(conv.report);
  if (inst.params.kind == InstanceKind::spanner) rep.audit(audit_penalties(inst.instance, conv.spanner, hs, D, t));

  VerificationReport lemma;
  lemma.name = "lemma.emulator_size";
  if (2 * static_cast<std::int64_t>(em.size()) < static_cast<std::int64_t>(pairs.size())) {
    lemma.checked = 1;
    if (st.max_stretch < 2 * D) lemma.fail(-1, -1, "emulator below |P|/2 edges keeps every stretch under 2D");
  }
  rep.audit(std::move(lemma));
  rep.wall_clock_ms = elapsed_ms(t0);
  return rep;
}

EdgeMask gT_mask(const LayeredGraph& g, const PairSet& pairs, std::span<const std::int64_t> T) {
  EdgeMask alive(g.edge_count(), 1);
  for (auto p : T) {
    if (p < 0 || p >= static_cast<std::int64_t>(pairs.size())) {
      throw InvalidArgument("T references unknown pair " + std::to_string(p));
    }
    for (EdgeId e : pairs.pairs[p].path) {
      if (g.edge(e).kind == EdgeKind::clique) alive[e] = 0;
    }
  }
  return alive;
}

LayeredGraph build_gT(const LayeredGraph& g, const PairSet& pairs, std::span<const std::int64_t> T) {
  return g.filtered(gT_mask(g, pairs, T));
}

namespace {

void check_gT_contract(VerificationReport& rep, const std::vector<std::int32_t>& base,
                       const std::vector<std::int32_t>& gt, const std::vector<std::uint8_t>& in_T, std::int64_t D) {
  for (std::size_t p = 0; p < base.size(); ++p) {
    ++rep.checked;
    const auto b = base[p], d = gt[p];
    const auto id = static_cast<std::int64_t>(p);
    if (in_T[p]) {
      if (d != kUnreachable && d < b + 2 * D) {
        rep.fail(id, -1, "distance " + std::to_string(d) + " below " + std::to_string(b) + " + 2D");
      }
    } else if (d != b) {
      rep.fail(id, -1, "distance changed outside T (" + std::to_string(b) + " -> " + format_distance(d == kUnreachable ? kInfinite : d) + ")");
    }
  }
}

}  // namespace

GTAudit audit_gT(const Instance& inst, std::span<const std::int64_t> T, std::int64_t D) {
  GTAudit out;
  out.report.name = "gT.contract";
  const EdgeMask mask = gT_mask(inst.graph, inst.pairs, T);
  const auto base = pair_distances(inst.graph, inst.pairs);
  const auto gt = pair_distances(inst.graph, inst.pairs, &mask);
  std::vector<std::uint8_t> in_T(inst.pairs.size(), 0);
  for (auto p : T) in_T[p] = 1;
  check_gT_contract(out.report, base, gt, in_T, D);
  for (std::size_t p = 0; p < base.size(); ++p) {
    out.base_dist.push_back(base[p] == kUnreachable ? kInfinite : base[p]);
    out.gt_dist.push_back(gt[p] == kUnreachable ? kInfinite : gt[p]);
  }
  return out;
}

GTFamilyAudit audit_gT_family(const Instance& inst, std::int64_t D) {
  const std::size_t P = inst.pairs.size();
  if (P > 16) throw ResourceLimit("G_T family needs at most 16 pairs, got " + std::to_string(P));
  GTFamilyAudit out;
  out.contract.name = "gT.family_contract";
  out.distinct.name = "gT.distinct_vectors";
  const auto base = pair_distances(inst.graph, inst.pairs);
  std::vector<std::vector<std::int32_t>> vectors;
  vectors.reserve(std::size_t{1} << P);
  for (std::uint32_t bits = 0; bits < (1U << P); ++bits) {
    std::vector<std::int64_t> T;
    std::vector<std::uint8_t> in_T(P, 0);
    for (std::size_t p = 0; p < P; ++p) {
      if (bits >> p & 1U) {
        T.push_back(static_cast<std::int64_t>(p));
        in_T[p] = 1;
      }
    }
    const EdgeMask mask = gT_mask(inst.graph, inst.pairs, T);
    auto gt = pair_distances(inst.graph, inst.pairs, &mask);
    check_gT_contract(out.contract, base, gt, in_T, D);
    vectors.push_back(std::move(gt));
  }
  out.subsets = static_cast<std::int64_t>(vectors.size());
  std::vector<std::size_t> order(vectors.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vectors[a] < vectors[b]; });
  out.distinct_vectors = vectors.empty() ? 0 : 1;
  out.distinct.checked = out.subsets;
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (vectors[order[i]] != vectors[order[i - 1]]) {
      ++out.distinct_vectors;
    } else {
      out.distinct.fail(static_cast<std::int64_t>(std::min(order[i], order[i - 1])),
                        static_cast<std::int64_t>(std::max(order[i], order[i - 1])),
                        "subsets produce the same distance vector");
    }
  }
  return out;
}

ExperimentReport run_compress_experiment(const BuiltInstance& inst, std::span<const std::int64_t> T,
                                         const std::string& description) {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentReport rep;
  rep.experiment = "compress";
  rep.instance = report_instance_fields(inst);
  rep.budget = "none";
  rep.candidate = "T=" + description;
  rep.candidate_size = static_cast<std::int64_t>(T.size());
  const GTAudit a = audit_gT(inst.instance, T, inst.path_scale());
  const EdgeMask mask = gT_mask(inst.instance.graph, inst.instance.pairs, T);
  rep.metric("removed_edges", static_cast<std::int64_t>(std::count(mask.begin(), mask.end(), 0)));
  std::int64_t changed = 0;
  for (std::size_t p = 0; p < a.base_dist.size(); ++p) changed += a.base_dist[p] != a.gt_dist[p];
  rep.metric("changed_pairs", changed);
  rep.audit(a.report);
  std::vector<std::uint8_t> in_T(inst.instance.pairs.size(), 0);
  for (auto p : T) in_T[p] = 1;
  Table t{"distances", {"pair", "in_T", "dist_G", "dist_GT"}, {}};
  for (std::size_t p = 0; p < a.base_dist.size(); ++p) {
    t.rows.push_back({std::to_string(p), in_T[p] ? "1" : "0", format_distance(a.base_dist[p]),
                      format_distance(a.gt_dist[p])});
  }
  rep.tables.push_back(std::move(t));
  rep.wall_clock_ms = elapsed_ms(t0);
  return rep;
}

Instance trim_pairs(const Instance& inst, std::size_t count) {
  Instance out{inst.graph, PairSet{inst.pairs.kind, {}}};
  const std::size_t k = std::min(count, inst.pairs.size());
  out.pairs.pairs.assign(inst.pairs.pairs.begin(), inst.pairs.pairs.begin() + static_cast<std::ptrdiff_t>(k));
  return out;
}

namespace {

ExperimentReport run_cell(const SweepSpec& spec, const InstanceParams& params, const Budget& budget,
                          std::uint64_t seed, const ResourceLimits& limits) {
  const BuiltInstance inst = build_instance(params, limits);
  if (spec.experiment == "shortcut") {
    ShortcutCandidate cand{"trivial k=auto seed=" + std::to_string(seed), [seed](const BuiltInstance& b, std::int64_t allowance) {
                             const auto n = b.instance.graph.vertex_count();
                             auto k = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(n))));
                             while (k > 0 && k * k > allowance) --k;
                             return trivial_shortcuts(b.instance.graph, k, seed);
                           }};
    return run_shortcut_experiment(inst, budget, cand);
  }
  if (spec.experiment == "spanner") {
    SpannerCandidate cand{"full", [](const BuiltInstance& b, std::int64_t) { return SpannerSubgraph::full(b.instance.graph); }};
    return run_spanner_experiment(inst, budget, cand);
  }
  if (spec.experiment == "emulator") {
    EmulatorCandidate cand{"exact", [](const BuiltInstance& b, std::int64_t) { return exact_pair_emulator(b.instance); }};
    return run_emulator_experiment(inst, budget, cand);
  }
  throw InvalidArgument("unknown sweep experiment '" + spec.experiment + "'");
}

}  // namespace

std::vector<ExperimentReport> sweep(const SweepSpec& spec, const ResourceLimits& limits) {
  std::vector<std::pair<const InstanceParams*, const Budget*>> cells;
  for (const auto& p : spec.instances) {
    for (const auto& b : spec.budgets) cells.emplace_back(&p, &b);
  }
  std::vector<ExperimentReport> out(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < cells.size();) {
      const auto& [params, budget] = cells[i];
      const std::uint64_t seed = spec.seed + i;
      try {
        out[i] = run_cell(spec, *params, *budget, seed, limits);
      } catch (const ResourceLimit& e) {
        out[i].status = ReportStatus::resource_limit;
        out[i].note = e.what();
      } catch (const std::exception& e) {
        out[i].status = ReportStatus::error;
        out[i].note = e.what();
      }
      if (out[i].experiment.empty()) {
        out[i].experiment = spec.experiment;
        out[i].instance = {{"kind", to_string(params->kind)}};
        out[i].budget = budget->to_string();
      }
    }
  };
  const unsigned threads = std::max(1U, std::min<unsigned>(spec.threads ? spec.threads : std::thread::hardware_concurrency(),
                                                           static_cast<unsigned>(std::max<std::size_t>(cells.size(), 1))));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

Table sweep_table(const std::vector<ExperimentReport>& reports) {
  Table t{"sweep",
          {"cell", "experiment", "instance", "n", "m", "pairs", "budget", "allowance", "candidate_size", "status",
           "headline"},
          {}};
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    std::string inst, n = "-", m = "-", pairs = "-";
    for (const auto& [k, v] : r.instance) {
      if (k == "n") n = v;
      else if (k == "m") m = v;
      else if (k == "pairs") pairs = v;
      else inst += (inst.empty() ? "" : ",") + k + "=" + v;
    }
    std::string headline = "-";
    for (const char* key : {"diameter_after", "max_stretch", "emulator.max_stretch"}) {
      if (const auto* v = r.find_metric(key)) {
        headline = std::string(key) + "=" + *v;
        break;
      }
    }
    t.rows.push_back({std::to_string(i), r.experiment, inst, n, m, pairs, r.budget, std::to_string(r.allowance),
                      std::to_string(r.candidate_size), to_string(r.status), headline});
  }
  return t;
}

}  // namespace lbg
