#include "lbg/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <ostream>

#include "CLI11.hpp"
#include "lbg/evaluate.hpp"
#include "lbg/io.hpp"
#include "lbg/rng.hpp"

namespace lbg {

namespace {

namespace fs = std::filesystem;

struct GenerateOptions {
  std::string kind;
  InstanceParams p;
  std::string orientation;
  std::string out_dir;
};

void add_param_flags(CLI::App* cmd, InstanceParams& p, std::string& orientation) {
  cmd->add_option("--d", p.d, "lattice dimension");
  cmd->add_option("--r", p.r, "corner ball radius");
  cmd->add_option("--D", p.D, "path length");
  cmd->add_option("--d1", p.d1, "first factor dimension");
  cmd->add_option("--r1", p.r1, "first factor radius");
  cmd->add_option("--d2", p.d2, "second factor dimension");
  cmd->add_option("--r2", p.r2, "second factor radius");
  cmd->add_option("--t", p.t, "subdivision factor (default D)");
  cmd->add_option("--c", p.c, "inner density target");
  cmd->add_option("--c0", p.c0, "spanner density budget");
  cmd->add_option("--q", p.q, "port count (0 = default)");
  cmd->add_option("--L", p.L, "outer path-length scale");
  cmd->add_option("--orientation", orientation, "directed or undirected (base, product)")
      ->check(CLI::IsMember({"directed", "undirected"}));
}

void finish_params(InstanceParams& p, const std::string& kind, const std::string& orientation) {
  p.kind = instance_kind_from_string(kind);
  if (!orientation.empty()) p.orientation = orientation == "directed" ? Orientation::directed : Orientation::undirected;
}

void emit(const std::string& text, const std::string& file, std::ostream& out) {
  if (file.empty()) out << text;
  else write_file(file, text);
}

// A candidate file may pin the instance it was made for with a leading
// "# instance <digest>" line.
void check_candidate_digest(const fs::path& file, const fs::path& instance_dir) {
  const std::string text = read_file(file);
  const std::string tag = "# instance ";
  if (text.rfind(tag, 0) != 0) return;
  const std::string digest = text.substr(tag.size(), text.find('\n') - tag.size());
  if (digest != manifest_digest(read_file(instance_dir / "manifest.txt"))) {
    throw CorruptInput("candidate " + file.string() + " was made for a different instance");
  }
}

std::vector<std::int64_t> parse_T(const std::string& spec, std::size_t pairs) {
  std::vector<std::int64_t> T;
  if (spec == "none") return T;
  if (spec == "all") {
    for (std::size_t p = 0; p < pairs; ++p) T.push_back(static_cast<std::int64_t>(p));
    return T;
  }
  std::size_t start = 0;
  while (start <= spec.size()) {
    const auto comma = spec.find(',', start);
    const std::string tok = spec.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    try {
      std::size_t used = 0;
      T.push_back(std::stoll(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw InvalidArgument("bad pair id '" + tok + "' in --T");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  std::sort(T.begin(), T.end());
  T.erase(std::unique(T.begin(), T.end()), T.end());
  return T;
}

// "name:a:b" -> {"name", a, b}; missing numbers default to `fallback`.
std::pair<std::string, std::vector<std::int64_t>> split_spec(const std::string& s, std::size_t arity,
                                                              std::int64_t fallback) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto colon = s.find(':', start);
    parts.push_back(s.substr(start, colon == std::string::npos ? std::string::npos : colon - start));
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  std::vector<std::int64_t> nums(arity, fallback);
  if (parts.size() > arity + 1) throw InvalidArgument("bad candidate '" + s + "'");
  for (std::size_t i = 1; i < parts.size(); ++i) {
    try {
      std::size_t used = 0;
      nums[i - 1] = std::stoll(parts[i], &used);
      if (used != parts[i].size()) throw std::invalid_argument(parts[i]);
    } catch (const std::exception&) {
      throw InvalidArgument("bad number in candidate '" + s + "'");
    }
  }
  return {parts[0], nums};
}

int report_exit(const ExperimentReport& rep) {
  switch (rep.status) {
    case ReportStatus::pass: return kExitPass;
    case ReportStatus::resource_limit: return kExitResourceLimit;
    default: return kExitVerificationFailure;
  }
}

int cmd_generate(const GenerateOptions& o, std::ostream& out) {
  InstanceParams p = o.p;
  finish_params(p, o.kind, o.orientation);
  const BuiltInstance inst = build_instance(p);
  write_instance(inst, o.out_dir);
  out << serialize_instance(inst).manifest;
  return kExitPass;
}

int cmd_verify(const std::string& dir, const std::string& mode, bool inner_conditions, bool ignore_digest,
               const std::string& report_file, std::ostream& out) {
  const BuiltInstance inst = read_instance(dir, !ignore_digest);
  const LayeredGraph& g = inst.instance.graph;
  const PairSet& pairs = inst.instance.pairs;
  std::vector<VerificationReport> audits;
  audits.push_back(audit_canonical_paths(g, pairs));
  if (audits.back().passed()) {
    audits.push_back(audit_unique_shortest_paths(g, pairs));
    const DisjointMode m = mode.empty() ? default_disjoint_mode(inst.params.kind) : disjoint_mode_from_string(mode);
    audits.push_back(audit_pair_disjointness(g, pairs, m));
  }
  if (inner_conditions) {
    if (inst.params.kind != InstanceKind::inner) throw InvalidArgument("--inner-conditions needs an inner instance");
    for (auto& r : audit_inner_conditions(g, pairs, inst.params.c, inst.params.L, inst.params.q)) {
      audits.push_back(std::move(r));
    }
  }
  bool ok = true;
  std::string text = std::string("format = ") + kReportFormat + "\ncommand = verify\n";
  text += std::string("instance.kind = ") + to_string(inst.params.kind) + "\n";
  text += format_fields(inst.fields, "instance.");
  if (ignore_digest) text += "digest = ignored\n";
  text += "instance.n = " + std::to_string(g.vertex_count()) + "\n";
  text += "instance.m = " + std::to_string(g.edge_count()) + "\n";
  text += "instance.pairs = " + std::to_string(pairs.size()) + "\n";
  for (const auto& a : audits) ok = ok && a.passed();
  text += std::string("status = ") + (ok ? "pass" : "fail") + "\n";
  for (const auto& a : audits) text += format_audit(a);
  emit(text, report_file, out);
  return ok ? kExitPass : kExitVerificationFailure;
}

struct EvalOptions {
  std::string dir;
  std::string budget = "vertex:1";
  std::string baseline = "trivial";
  std::string candidate;
  std::int64_t k = -1;
  std::int64_t size = 0;
  std::uint64_t seed = 1;
  std::string T = "none";
  std::string report;
  bool timing = false;
};

int cmd_eval(const std::string& what, const EvalOptions& o, std::ostream& out) {
  const BuiltInstance inst = read_instance(o.dir);
  const Budget budget = Budget::parse(o.budget);
  const std::string seed = " seed=" + std::to_string(o.seed);
  ExperimentReport rep;
  if (what == "shortcut") {
    ShortcutCandidate cand;
    if (!o.candidate.empty()) {
      check_candidate_digest(o.candidate, o.dir);
      const ShortcutSet sc = read_shortcuts(o.candidate);
      cand = {"file " + fs::path(o.candidate).filename().string(), [sc](const BuiltInstance&, std::int64_t) { return sc; }};
    } else if (o.baseline == "trivial") {
      const auto k = o.k;
      const auto s = o.seed;
      cand = {"trivial k=" + (k < 0 ? std::string("sqrt(n)") : std::to_string(k)) + seed,
              [k, s](const BuiltInstance& b, std::int64_t) {
                const auto n = b.instance.graph.vertex_count();
                std::int64_t kk = k;
                if (kk < 0) {
                  kk = 0;
                  while (kk * kk < n) ++kk;
                }
                return trivial_shortcuts(b.instance.graph, kk, s);
              }};
    } else if (o.baseline == "random" || o.baseline == "useful") {
      const auto size = o.size;
      const auto s = o.seed;
      const bool useful = o.baseline == "useful";
      cand = {o.baseline + " size=" + std::to_string(size) + seed, [=](const BuiltInstance& b, std::int64_t) {
                return useful ? useful_path_shortcuts(b.instance, size, s) : random_path_shortcuts(b.instance, size, s);
              }};
    } else if (o.baseline == "none") {
      cand = {"none", [](const BuiltInstance&, std::int64_t) { return ShortcutSet{}; }};
    } else {
      throw InvalidArgument("unknown shortcut baseline '" + o.baseline + "'");
    }
    rep = run_shortcut_experiment(inst, budget, cand);
  } else if (what == "spanner") {
    const std::string spec = o.candidate.empty() ? "full" : o.candidate;
    SpannerCandidate cand;
    const auto [name, nums] = split_spec(spec, 2, -1);
    if (spec == "full") {
      cand = {"full", [](const BuiltInstance& b, std::int64_t) { return SpannerSubgraph::full(b.instance.graph); }};
    } else if (name == "drop-clique") {
      const auto pair = nums[0], count = nums[1] < 0 ? inst.path_scale() : nums[1];
      cand = {spec, [pair, count](const BuiltInstance& b, std::int64_t) {
                return drop_path_clique_edges(b.instance, pair, count);
              }};
    } else if (name == "drop-inherited") {
      const auto pair = nums[0], k = std::max<std::int64_t>(nums[1], 0);
      cand = {spec, [pair, k](const BuiltInstance& b, std::int64_t) {
                return drop_path_inherited_edge(b.instance, pair, k);
              }};
    } else {
      check_candidate_digest(spec, o.dir);
      const SpannerSubgraph h = read_spanner(spec, inst.instance.graph.edge_count());
      cand = {"file " + fs::path(spec).filename().string(), [h](const BuiltInstance&, std::int64_t) { return h; }};
    }
    rep = run_spanner_experiment(inst, budget, cand);
  } else if (what == "emulator") {
    const std::string spec = o.candidate.empty() ? "exact" : o.candidate;
    const auto [name, nums] = split_spec(spec, 1, 0);
    const auto count = nums[0];
    const auto s = o.seed;
    EmulatorCandidate cand;
    if (spec == "exact") {
      cand = {"exact", [](const BuiltInstance& b, std::int64_t) { return exact_pair_emulator(b.instance); }};
    } else if (spec == "empty") {
      cand = {"empty", [](const BuiltInstance&, std::int64_t) { return WeightedEmulator{}; }};
    } else if (name == "random-path") {
      cand = {spec + seed, [count, s](const BuiltInstance& b, std::int64_t) {
                return random_path_emulator(b.instance, count, s);
              }};
    } else if (name == "random-vertex") {
      cand = {spec + seed, [count, s](const BuiltInstance& b, std::int64_t) {
                return random_vertex_emulator(b.instance, count, s);
              }};
    } else if (name == "random-cover") {
      cand = {spec + seed, [count, s](const BuiltInstance& b, std::int64_t) {
                return random_cover_emulator(b.instance, count, s);
              }};
    } else if (name == "random-endpoint") {
      cand = {spec + seed, [count, s](const BuiltInstance& b, std::int64_t) {
                return random_endpoint_emulator(b.instance, count, s);
              }};
    } else {
      check_candidate_digest(spec, o.dir);
      const WeightedEmulator em = read_emulator(spec);
      cand = {"file " + fs::path(spec).filename().string(), [em](const BuiltInstance&, std::int64_t) { return em; }};
    }
    rep = run_emulator_experiment(inst, budget, cand);
  } else {
    const auto T = parse_T(o.T, inst.instance.pairs.size());
    rep = run_compress_experiment(inst, T, o.T);
  }
  emit(rep.to_text(o.timing), o.report, out);
  return report_exit(rep);
}

struct SweepOptions {
  std::string kind = "base";
  std::vector<int> d{2}, r{1}, D{1}, d1{2}, r1{1}, d2{2}, r2{1}, t{0}, c{1}, L{2}, q{0};
  std::string orientation = "directed";
  std::vector<std::string> budgets{"vertex:1"};
  std::string experiment = "shortcut";
  std::uint64_t seed = 1;
  unsigned threads = 0;
  bool full = false;
  std::string report;
};

int cmd_sweep(const SweepOptions& o, std::ostream& out) {
  SweepSpec spec;
  spec.experiment = o.experiment;
  spec.seed = o.seed;
  spec.threads = o.threads;
  for (const auto& b : o.budgets) spec.budgets.push_back(Budget::parse(b));
  InstanceParams base;
  finish_params(base, o.kind, o.orientation);
  for (int d : o.d)
    for (int r : o.r)
      for (int D : o.D)
        for (int d1 : o.d1)
          for (int r1 : o.r1)
            for (int d2 : o.d2)
              for (int r2 : o.r2)
                for (int t : o.t)
                  for (int c : o.c)
                    for (int L : o.L)
                      for (int q : o.q) {
                        InstanceParams p = base;
                        p.d = d, p.r = r, p.D = D, p.d1 = d1, p.r1 = r1, p.d2 = d2, p.r2 = r2;
                        p.t = t, p.c = c, p.L = L, p.q = q;
                        spec.instances.push_back(p);
                      }
  const auto reports = sweep(spec);
  std::string text = std::string("format = ") + kReportFormat + "\ncommand = sweep\n";
  text += "experiment = " + o.experiment + "\n";
  text += std::string("rng = ") + Rng::kGenerator + "\n";
  text += "seed = " + std::to_string(o.seed) + "\n";
  text += "cells = " + std::to_string(reports.size()) + "\n";
  text += format_table(sweep_table(reports));
  if (o.full) {
    for (std::size_t i = 0; i < reports.size(); ++i) text += "\ncell = " + std::to_string(i) + "\n" + reports[i].to_text();
  }
  emit(text, o.report, out);
  const bool failed = std::any_of(reports.begin(), reports.end(), [](const ExperimentReport& r) {
    return r.status == ReportStatus::fail || r.status == ReportStatus::error;
  });
  return failed ? kExitVerificationFailure : kExitPass;
}

int cmd_export(const std::string& dir, const std::string& format, const std::string& file, std::ostream& out) {
  const BuiltInstance inst = read_instance(dir);
  emit(format == "json" ? export_json(inst) : export_dot(inst), file, out);
  return kExitPass;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lower-bound graph generator and verifier", "lbg"};
  app.require_subcommand(1);

  GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "build an instance and write its files");
  generate->add_option("kind", gen.kind, "base, product, spanner, inner, outer or improved-spanner")->required();
  add_param_flags(generate, gen.p, gen.orientation);
  generate->add_option("--out", gen.out_dir, "output directory")->required();

  std::string verify_dir, verify_mode, verify_report;
  bool inner_conditions = false, ignore_digest = false;
  auto* verify = app.add_subcommand("verify", "re-check an instance's pair invariants");
  verify->add_option("dir", verify_dir, "instance directory")->required();
  verify->add_option("--mode", verify_mode, "disjointness mode (default by kind)");
  verify->add_flag("--inner-conditions", inner_conditions, "also check the inner-graph conditions");
  verify->add_flag("--ignore-digest", ignore_digest, "audit files whose digest no longer matches");
  verify->add_option("--report", verify_report, "write the report here");

  EvalOptions ev;
  auto* eval = app.add_subcommand("eval", "run an experiment against an instance");
  eval->require_subcommand(1);
  for (const char* name : {"shortcut", "spanner", "emulator", "compress"}) {
    auto* sub = eval->add_subcommand(name);
    sub->add_option("dir", ev.dir, "instance directory")->required();
    sub->add_option("--report", ev.report, "write the report here");
    sub->add_flag("--timing", ev.timing, "include wall-clock time");
    sub->add_option("--seed", ev.seed, "random seed");
    if (std::string(name) == "compress") {
      sub->add_option("--T", ev.T, "all, none or comma-separated pair ids");
      continue;
    }
    sub->add_option("--budget", ev.budget, "kind[:multiplier[:epsilon]]");
    sub->add_option("--candidate", ev.candidate, "candidate file or builtin name");
    if (std::string(name) == "shortcut") {
      sub->add_option("--baseline", ev.baseline, "trivial, random, useful or none");
      sub->add_option("--k", ev.k, "trivial baseline sample size (default ceil(sqrt(n)))");
      sub->add_option("--size", ev.size, "random/useful baseline size");
    }
  }

  SweepOptions sw;
  auto* sweep_cmd = app.add_subcommand("sweep", "run an experiment over a parameter grid");
  sweep_cmd->add_option("--construction", sw.kind, "instance kind");
  for (auto [flag, vec] : {std::pair{"--d", &sw.d}, std::pair{"--r", &sw.r}, std::pair{"--D", &sw.D},
                           std::pair{"--d1", &sw.d1}, std::pair{"--r1", &sw.r1}, std::pair{"--d2", &sw.d2},
                           std::pair{"--r2", &sw.r2}, std::pair{"--t", &sw.t}, std::pair{"--c", &sw.c},
                           std::pair{"--L", &sw.L}, std::pair{"--q", &sw.q}}) {
    sweep_cmd->add_option(flag, *vec, "comma-separated values")->delimiter(',');
  }
  sweep_cmd->add_option("--orientation", sw.orientation)->check(CLI::IsMember({"directed", "undirected"}));
  sweep_cmd->add_option("--budget", sw.budgets, "budget spec, repeatable")->delimiter(',');
  sweep_cmd->add_option("--experiment", sw.experiment)->check(CLI::IsMember({"shortcut", "spanner", "emulator"}));
  sweep_cmd->add_option("--seed", sw.seed);
  sweep_cmd->add_option("--threads", sw.threads);
  sweep_cmd->add_flag("--full", sw.full, "append every cell's full report");
  sweep_cmd->add_option("--report", sw.report);

  std::string export_dir, export_format = "json", export_out;
  auto* exp = app.add_subcommand("export", "convert an instance to JSON or DOT");
  exp->add_option("dir", export_dir)->required();
  exp->add_option("--format", export_format)->check(CLI::IsMember({"json", "dot"}));
  exp->add_option("--out", export_out);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (generate->parsed()) return cmd_generate(gen, out);
    if (verify->parsed()) return cmd_verify(verify_dir, verify_mode, inner_conditions, ignore_digest, verify_report, out);
    if (eval->parsed()) {
      for (auto* sub : eval->get_subcommands()) {
        if (sub->parsed()) return cmd_eval(sub->get_name(), ev, out);
      }
    }
    if (sweep_cmd->parsed()) return cmd_sweep(sw, out);
    if (exp->parsed()) return cmd_export(export_dir, export_format, export_out, out);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ResourceLimit& e) {
    err << "resource limit: " << e.what() << "\n";
    return kExitResourceLimit;
  } catch (const Infeasible& e) {
    err << "infeasible: " << e.what() << "\n";
    return kExitResourceLimit;
  } catch (const CorruptInput& e) {
    err << "corrupt input: " << e.what() << "\n";
    return kExitCorrupt;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitVerificationFailure;
  }
  return kExitUsage;
}

}  // namespace lbg
