#include "lbg/io.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace lbg {

namespace {

constexpr const char* kGraphHeader = "lbg-graph 1";
constexpr const char* kLabelsHeader = "lbg-labels 1";
constexpr const char* kPairsHeader = "lbg-pairs 1";

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  auto lines = split(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

template <class T>
T number(std::string_view s, const std::string& what) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw CorruptInput("bad " + what + " '" + std::string(s) + "'");
  }
  return v;
}

// "key value" header line.
std::int64_t header_value(std::string_view line, std::string_view key) {
  const auto parts = split(line, ' ');
  if (parts.size() != 2 || parts[0] != key) throw CorruptInput("expected header '" + std::string(key) + "'");
  return number<std::int64_t>(parts[1], std::string(key));
}

std::string join_coords(const std::vector<std::int32_t>& c) {
  if (c.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(c[i]);
  }
  return out;
}

std::vector<std::int32_t> parse_coords(std::string_view s) {
  std::vector<std::int32_t> out;
  if (s == "-") return out;
  for (auto part : split(s, ',')) out.push_back(number<std::int32_t>(part, "coordinate"));
  return out;
}

VertexKind vertex_kind_from(std::string_view s) {
  for (auto k : {VertexKind::lattice, VertexKind::subdivision, VertexKind::clique_port}) {
    if (s == to_string(k)) return k;
  }
  throw CorruptInput("unknown vertex kind '" + std::string(s) + "'");
}

EdgeKind edge_kind_from(std::string_view s) {
  for (auto k : {EdgeKind::inherited, EdgeKind::clique, EdgeKind::inner, EdgeKind::shortcut}) {
    if (s == to_string(k)) return k;
  }
  throw CorruptInput("unknown edge kind '" + std::string(s) + "'");
}

struct Manifest {
  Fields fields;
  std::string body;
  std::string digest;

  const std::string& get(const std::string& key) const {
    for (const auto& [k, v] : fields) {
      if (k == key) return v;
    }
    throw CorruptInput("manifest lacks '" + key + "'");
  }
};

Manifest parse_manifest(std::string_view text) {
  Manifest m;
  for (auto line : lines_of(text)) {
    const auto eq = line.find(" = ");
    if (eq == std::string_view::npos) throw CorruptInput("bad manifest line '" + std::string(line) + "'");
    std::string key(line.substr(0, eq)), value(line.substr(eq + 3));
    if (key == "digest") {
      m.digest = value;
      continue;
    }
    if (!m.digest.empty()) throw CorruptInput("manifest has lines after the digest");
    m.body += std::string(line) + "\n";
    m.fields.emplace_back(std::move(key), std::move(value));
  }
  if (m.digest.empty()) throw CorruptInput("manifest has no digest");
  return m;
}

std::string full_digest(const std::string& graph, const std::string& labels, const std::string& pairs,
                        const std::string& body) {
  return sha256_hex(graph + labels + pairs + body);
}

// Parameter keys written to the manifest; everything else is counts/digests.
bool is_param_key(const std::string& k) {
  return k != "format" && k != "kind" && k != "n" && k != "m" && k != "pairs" && k.find(".sha256") == std::string::npos;
}

}  // namespace

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 computation failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::string serialize_graph(const LayeredGraph& g) {
  std::string out = std::string(kGraphHeader) + "\n";
  out += "directed " + std::to_string(g.directed() ? 1 : 0) + "\n";
  out += "max_layer " + std::to_string(g.max_layer()) + "\n";
  out += "vertices " + std::to_string(g.vertex_count()) + "\n";
  out += "edges " + std::to_string(g.edge_count()) + "\n";
  for (const Edge& e : g.edges()) {
    out += std::to_string(e.u) + ' ' + std::to_string(e.v) + ' ' + to_string(e.kind) + ' ' +
           std::to_string(static_cast<int>(e.block)) + ' ' + std::to_string(e.step) + '\n';
  }
  return out;
}

std::string serialize_labels(const LayeredGraph& g) {
  std::string out = std::string(kLabelsHeader) + "\n";
  out += "vertices " + std::to_string(g.vertex_count()) + "\n";
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const VertexLabel& l = g.label(v);
    out += std::to_string(v) + ' ' + to_string(l.kind) + ' ' + std::to_string(l.layer) + ' ' + join_coords(l.x) + ' ' +
           join_coords(l.y) + ' ' + std::to_string(l.provenance) + ' ' + std::to_string(l.index) + '\n';
  }
  return out;
}

std::string encode_path(std::span<const EdgeId> path) {
  if (path.empty()) return "-";
  std::string out;
  std::size_t i = 0;
  while (i < path.size()) {
    std::size_t j = i + 1;
    while (j < path.size() && path[j] == path[j - 1] + 1) ++j;
    if (!out.empty()) out += ',';
    out += std::to_string(path[i]);
    if (j - i > 1) out += ':' + std::to_string(j - i);
    i = j;
  }
  return out;
}

std::vector<EdgeId> decode_path(std::string_view text) {
  std::vector<EdgeId> out;
  if (text == "-") return out;
  for (auto run : split(text, ',')) {
    const auto colon = run.find(':');
    const auto start = number<EdgeId>(run.substr(0, colon), "path edge");
    const std::int64_t len = colon == std::string_view::npos ? 1 : number<std::int64_t>(run.substr(colon + 1), "run length");
    if (len < 1) throw CorruptInput("bad path run length");
    for (std::int64_t k = 0; k < len; ++k) out.push_back(static_cast<EdgeId>(start + k));
  }
  return out;
}

std::string serialize_pairs(const PairSet& pairs) {
  std::string out = std::string(kPairsHeader) + "\n";
  out += std::string("kind ") + to_string(pairs.kind) + "\n";
  out += "pairs " + std::to_string(pairs.size()) + "\n";
  for (const CriticalPair& cp : pairs.pairs) {
    out += std::to_string(cp.source) + ' ' + std::to_string(cp.target) + ' ' + std::to_string(cp.expected_length) + ' ' +
           std::to_string(cp.v) + ' ' + std::to_string(cp.w) + ' ' + encode_path(cp.path) + '\n';
  }
  return out;
}

InstanceText serialize_instance(const BuiltInstance& inst) {
  InstanceText t;
  t.graph = serialize_graph(inst.instance.graph);
  t.labels = serialize_labels(inst.instance.graph);
  t.pairs = serialize_pairs(inst.instance.pairs);
  std::string body = std::string("format = ") + kInstanceFormat + "\n";
  body += std::string("kind = ") + to_string(inst.params.kind) + "\n";
  body += format_fields(inst.fields);
  body += "n = " + std::to_string(inst.instance.graph.vertex_count()) + "\n";
  body += "m = " + std::to_string(inst.instance.graph.edge_count()) + "\n";
  body += "pairs = " + std::to_string(inst.instance.pairs.size()) + "\n";
  body += "graph.sha256 = " + sha256_hex(t.graph) + "\n";
  body += "labels.sha256 = " + sha256_hex(t.labels) + "\n";
  body += "pairs.sha256 = " + sha256_hex(t.pairs) + "\n";
  t.manifest = body + "digest = " + full_digest(t.graph, t.labels, t.pairs, body) + "\n";
  return t;
}

BuiltInstance parse_instance(const InstanceText& text, bool check_digest) {
  const Manifest man = parse_manifest(text.manifest);
  if (man.get("format") != kInstanceFormat) throw CorruptInput("unsupported format '" + man.get("format") + "'");
  if (check_digest && full_digest(text.graph, text.labels, text.pairs, man.body) != man.digest) {
    throw CorruptInput("digest mismatch: instance files do not match the manifest");
  }

  const auto glines = lines_of(text.graph);
  if (glines.size() < 5 || glines[0] != kGraphHeader) throw CorruptInput("bad graph header");
  const bool directed = header_value(glines[1], "directed") != 0;
  const auto max_layer = static_cast<std::int32_t>(header_value(glines[2], "max_layer"));
  const std::int64_t n = header_value(glines[3], "vertices");
  const std::int64_t m = header_value(glines[4], "edges");
  if (static_cast<std::int64_t>(glines.size()) != 5 + m) throw CorruptInput("graph edge count does not match header");
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::size_t i = 5; i < glines.size(); ++i) {
    const auto f = split(glines[i], ' ');
    if (f.size() != 5) throw CorruptInput("bad edge line " + std::to_string(i + 1));
    edges.push_back(Edge{number<VertexId>(f[0], "vertex"), number<VertexId>(f[1], "vertex"), edge_kind_from(f[2]),
                         static_cast<std::int8_t>(number<int>(f[3], "block")), number<std::int32_t>(f[4], "step")});
  }

  const auto llines = lines_of(text.labels);
  if (llines.size() < 2 || llines[0] != kLabelsHeader) throw CorruptInput("bad labels header");
  if (header_value(llines[1], "vertices") != n || static_cast<std::int64_t>(llines.size()) != 2 + n) {
    throw CorruptInput("label count does not match the graph");
  }
  std::vector<VertexLabel> labels;
  labels.reserve(n);
  for (std::size_t i = 2; i < llines.size(); ++i) {
    const auto f = split(llines[i], ' ');
    if (f.size() != 7 || number<std::int64_t>(f[0], "vertex id") != static_cast<std::int64_t>(i - 2)) {
      throw CorruptInput("bad label line " + std::to_string(i + 1));
    }
    labels.push_back(VertexLabel{vertex_kind_from(f[1]), number<std::int32_t>(f[2], "layer"), parse_coords(f[3]),
                                 parse_coords(f[4]), number<std::int64_t>(f[5], "provenance"),
                                 number<std::int32_t>(f[6], "index")});
  }

  const auto plines = lines_of(text.pairs);
  if (plines.size() < 3 || plines[0] != kPairsHeader) throw CorruptInput("bad pairs header");
  const auto kparts = split(plines[1], ' ');
  if (kparts.size() != 2 || kparts[0] != "kind") throw CorruptInput("bad pairs kind line");
  PairSet pairs;
  try {
    pairs.kind = instance_kind_from_string(std::string(kparts[1]));
  } catch (const InvalidArgument& e) {
    throw CorruptInput(e.what());
  }
  const std::int64_t P = header_value(plines[2], "pairs");
  if (static_cast<std::int64_t>(plines.size()) != 3 + P) throw CorruptInput("pair count does not match header");
  for (std::size_t i = 3; i < plines.size(); ++i) {
    const auto f = split(plines[i], ' ');
    if (f.size() != 6) throw CorruptInput("bad pair line " + std::to_string(i + 1));
    CriticalPair cp;
    cp.source = number<VertexId>(f[0], "source");
    cp.target = number<VertexId>(f[1], "target");
    cp.expected_length = number<std::int64_t>(f[2], "expected length");
    cp.v = number<std::int32_t>(f[3], "vector index");
    cp.w = number<std::int32_t>(f[4], "vector index");
    cp.path = decode_path(f[5]);
    for (EdgeId e : cp.path) {
      if (e < 0 || e >= m) throw CorruptInput("pair line " + std::to_string(i + 1) + " references a missing edge");
    }
    if (cp.source < 0 || cp.source >= n || cp.target < 0 || cp.target >= n) {
      throw CorruptInput("pair line " + std::to_string(i + 1) + " references a missing vertex");
    }
    pairs.pairs.push_back(std::move(cp));
  }

  BuiltInstance out;
  try {
    out.instance.graph = LayeredGraph(directed, max_layer, std::move(labels), std::move(edges));
  } catch (const ConstructionError& e) {
    throw CorruptInput(std::string("graph file: ") + e.what());
  }
  out.instance.pairs = std::move(pairs);

  if (check_digest && (std::to_string(out.instance.graph.vertex_count()) != man.get("n") ||
      std::to_string(out.instance.graph.edge_count()) != man.get("m") ||
      std::to_string(out.instance.pairs.size()) != man.get("pairs"))) {
    throw CorruptInput("manifest counts do not match the instance files");
  }
  InstanceKind kind;
  try {
    kind = instance_kind_from_string(man.get("kind"));
  } catch (const InvalidArgument& e) {
    throw CorruptInput(e.what());
  }
  for (const auto& [k, v] : man.fields) {
    if (is_param_key(k)) out.fields.emplace_back(k, v);
  }
  try {
    out.params = params_from_fields(kind, out.fields);
  } catch (const InvalidArgument& e) {
    throw CorruptInput(e.what());
  }
  return out;
}

std::string read_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& file, std::string_view data) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidArgument("cannot write " + file.string());
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw InvalidArgument("write failed for " + file.string());
}

void write_instance(const BuiltInstance& inst, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const InstanceText t = serialize_instance(inst);
  write_file(dir / "graph.txt", t.graph);
  write_file(dir / "labels.txt", t.labels);
  write_file(dir / "pairs.txt", t.pairs);
  write_file(dir / "manifest.txt", t.manifest);
}

BuiltInstance read_instance(const std::filesystem::path& dir, bool check_digest) {
  InstanceText t;
  for (auto [name, slot] : {std::pair{"graph.txt", &t.graph}, std::pair{"labels.txt", &t.labels},
                            std::pair{"pairs.txt", &t.pairs}, std::pair{"manifest.txt", &t.manifest}}) {
    const auto path = dir / name;
    if (!std::filesystem::exists(path)) throw CorruptInput("missing instance file " + path.string());
    *slot = read_file(path);
  }
  return parse_instance(t, check_digest);
}

std::string manifest_digest(const std::string& manifest_text) { return parse_manifest(manifest_text).digest; }

namespace {

template <class F>
void for_data_lines(const std::filesystem::path& file, F&& fn) {
  const std::string text = read_file(file);
  std::size_t lineno = 0;
  for (auto line : lines_of(text)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    try {
      fn(split(line, ' '));
    } catch (const CorruptInput& e) {
      throw InvalidArgument(file.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

}  // namespace

ShortcutSet read_shortcuts(const std::filesystem::path& file) {
  ShortcutSet sc;
  for_data_lines(file, [&](const std::vector<std::string_view>& f) {
    if (f.size() != 2) throw CorruptInput("expected 'u v'");
    sc.edges.emplace_back(number<VertexId>(f[0], "vertex"), number<VertexId>(f[1], "vertex"));
  });
  return sc;
}

WeightedEmulator read_emulator(const std::filesystem::path& file) {
  WeightedEmulator em;
  for_data_lines(file, [&](const std::vector<std::string_view>& f) {
    if (f.size() != 3) throw CorruptInput("expected 'u v w'");
    em.edges.push_back({number<VertexId>(f[0], "vertex"), number<VertexId>(f[1], "vertex"),
                        number<std::int64_t>(f[2], "weight")});
  });
  return em;
}

SpannerSubgraph read_spanner(const std::filesystem::path& file, std::int64_t edge_count) {
  SpannerSubgraph h{EdgeMask(edge_count, 0)};
  for_data_lines(file, [&](const std::vector<std::string_view>& f) {
    if (f.size() != 1) throw CorruptInput("expected one edge id");
    const auto e = number<std::int64_t>(f[0], "edge id");
    if (e < 0 || e >= edge_count) throw CorruptInput("edge id out of range; candidate is not a subgraph");
    h.alive[e] = 1;
  });
  return h;
}

std::string export_json(const BuiltInstance& inst) {
  using nlohmann::ordered_json;
  const LayeredGraph& g = inst.instance.graph;
  ordered_json j;
  j["format"] = kInstanceFormat;
  j["kind"] = to_string(inst.params.kind);
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : inst.fields) params[k] = v;
  j["params"] = params;
  j["directed"] = g.directed();
  j["max_layer"] = g.max_layer();
  ordered_json vertices = ordered_json::array();
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const VertexLabel& l = g.label(v);
    ordered_json jv{{"id", v}, {"kind", to_string(l.kind)}, {"layer", l.layer}, {"x", l.x}};
    if (!l.y.empty()) jv["y"] = l.y;
    if (l.provenance >= 0) jv["provenance"] = l.provenance;
    if (l.index >= 0) jv["index"] = l.index;
    vertices.push_back(std::move(jv));
  }
  j["vertices"] = std::move(vertices);
  ordered_json edges = ordered_json::array();
  for (const Edge& e : g.edges()) edges.push_back(ordered_json::array({e.u, e.v, to_string(e.kind)}));
  j["edges"] = std::move(edges);
  ordered_json pairs = ordered_json::array();
  for (const CriticalPair& cp : inst.instance.pairs.pairs) {
    pairs.push_back(ordered_json{{"source", cp.source},
                                 {"target", cp.target},
                                 {"expected_length", cp.expected_length},
                                 {"path", cp.path}});
  }
  j["pairs"] = std::move(pairs);
  return j.dump(1) + "\n";
}

std::string export_dot(const BuiltInstance& inst) {
  const LayeredGraph& g = inst.instance.graph;
  const char* arrow = g.directed() ? " -> " : " -- ";
  std::string out = std::string(g.directed() ? "digraph" : "graph") + " lbg {\n";
  out += "  rankdir=LR;\n  node [shape=point];\n";
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const VertexLabel& l = g.label(v);
    out += "  " + std::to_string(v) + " [layer=" + std::to_string(l.layer) + " kind=" + to_string(l.kind) + "];\n";
  }
  for (const Edge& e : g.edges()) {
    out += "  " + std::to_string(e.u) + arrow + std::to_string(e.v);
    if (e.kind != EdgeKind::inherited) out += std::string(" [kind=") + to_string(e.kind) + "]";
    out += ";\n";
  }
  out += "}\n";
  return out;
}

}  // namespace lbg
