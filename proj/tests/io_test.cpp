#include <filesystem>

#include "doctest.h"
#include "json.hpp"
#include "lbg/io.hpp"

using namespace lbg;

namespace {

BuiltInstance make(InstanceKind kind) {
  InstanceParams p;
  p.kind = kind;
  if (kind == InstanceKind::inner || kind == InstanceKind::outer) p.q = 4;
  return build_instance(p);
}

std::string replace_line(const std::string& text, std::size_t index, const std::string& with) {
  std::string out;
  std::size_t start = 0, line = 0;
  while (start < text.size()) {
    const auto end = text.find('\n', start);
    std::string cur = text.substr(start, end - start);
    if (line == index) cur = with;
    if (!(line == index && with == "\x01")) out += cur + "\n";
    start = end + 1;
    ++line;
  }
  return out;
}

std::string line_at(const std::string& text, std::size_t index) {
  std::size_t start = 0;
  for (std::size_t i = 0; i < index; ++i) start = text.find('\n', start) + 1;
  return text.substr(start, text.find('\n', start) - start);
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("sha256 of known strings") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("path run-length encoding") {
  const std::vector<EdgeId> path{4, 5, 6, 10, 12, 13};
  CHECK(encode_path(path) == "4:3,10,12:2");
  CHECK(decode_path("4:3,10,12:2") == path);
  CHECK(encode_path({}) == "-");
  CHECK(decode_path("-").empty());
  CHECK_THROWS_AS(decode_path("4:0"), CorruptInput);
  CHECK_THROWS_AS(decode_path("x"), CorruptInput);
}

TEST_CASE("round trip for every construction") {
  for (auto kind : {InstanceKind::base, InstanceKind::product, InstanceKind::spanner, InstanceKind::inner,
                    InstanceKind::outer, InstanceKind::improved_spanner}) {
    const auto inst = make(kind);
    const auto text = serialize_instance(inst);
    const auto back = parse_instance(text);
    INFO(to_string(kind));
    CHECK(back.instance.graph.labels() == inst.instance.graph.labels());
    CHECK(back.instance.graph.edges() == inst.instance.graph.edges());
    CHECK(back.instance.graph.directed() == inst.instance.graph.directed());
    CHECK(back.instance.graph.max_layer() == inst.instance.graph.max_layer());
    CHECK(back.instance.pairs.pairs == inst.instance.pairs.pairs);
    CHECK(back.instance.pairs.kind == inst.instance.pairs.kind);
    CHECK(back.fields == inst.fields);
    CHECK(serialize_instance(back).manifest == text.manifest);
  }
}

TEST_CASE("tampering is detected") {
  const auto inst = make(InstanceKind::base);
  const auto text = serialize_instance(inst);
  auto bad = text;
  bad.graph = replace_line(text.graph, 7, "\x01");
  CHECK_THROWS_AS(parse_instance(bad), CorruptInput);
  bad = text;
  bad.pairs = replace_line(text.pairs, 4, line_at(text.pairs, 3));
  CHECK_THROWS_AS(parse_instance(bad), CorruptInput);
  bad = text;
  bad.labels[bad.labels.size() - 2] = bad.labels[bad.labels.size() - 2] == '0' ? '1' : '0';
  CHECK_THROWS_AS(parse_instance(bad), CorruptInput);
  bad = text;
  bad.manifest = replace_line(text.manifest, 3, "r = 2");
  CHECK_THROWS_AS(parse_instance(bad), CorruptInput);
}

TEST_CASE("ignoring the digest still checks syntax") {
  const auto inst = make(InstanceKind::base);
  const auto text = serialize_instance(inst);
  auto bad = text;
  bad.pairs = replace_line(text.pairs, 4, line_at(text.pairs, 3));
  const auto back = parse_instance(bad, false);
  CHECK(back.instance.pairs.pairs[1] == back.instance.pairs.pairs[0]);
  bad.graph = replace_line(text.graph, 7, "\x01");
  CHECK_THROWS_AS(parse_instance(bad, false), CorruptInput);
  bad = text;
  bad.pairs = replace_line(text.pairs, 3, "0 1 2 0 0 999999");
  CHECK_THROWS_AS(parse_instance(bad, false), CorruptInput);
}

TEST_CASE("files on disk") {
  const auto dir = std::filesystem::temp_directory_path() / "lbg_io_test";
  std::filesystem::remove_all(dir);
  const auto inst = make(InstanceKind::product);
  write_instance(inst, dir);
  const auto back = read_instance(dir);
  CHECK(back.instance.graph.edges() == inst.instance.graph.edges());
  CHECK(manifest_digest(read_file(dir / "manifest.txt")) == manifest_digest(serialize_instance(inst).manifest));
  std::filesystem::remove(dir / "labels.txt");
  CHECK_THROWS_AS(read_instance(dir), CorruptInput);
  std::filesystem::remove_all(dir);
}

TEST_CASE("candidate files") {
  const auto dir = std::filesystem::temp_directory_path() / "lbg_io_cand";
  std::filesystem::create_directories(dir);
  write_file(dir / "sc.txt", "# shortcuts\n1 2\n\n3 4\n");
  CHECK(read_shortcuts(dir / "sc.txt").edges == std::vector<std::pair<VertexId, VertexId>>{{1, 2}, {3, 4}});
  write_file(dir / "em.txt", "1 2 3\n");
  CHECK(read_emulator(dir / "em.txt").edges == std::vector<WeightedEdge>{{1, 2, 3}});
  write_file(dir / "sp.txt", "0\n2\n");
  CHECK(read_spanner(dir / "sp.txt", 4).alive == EdgeMask{1, 0, 1, 0});
  CHECK_THROWS_AS(read_spanner(dir / "sp.txt", 2), InvalidArgument);
  write_file(dir / "bad.txt", "1 2 3\n");
  CHECK_THROWS_AS(read_shortcuts(dir / "bad.txt"), InvalidArgument);
  std::filesystem::remove_all(dir);
}

TEST_CASE("exports") {
  const auto inst = make(InstanceKind::base);
  const auto j = nlohmann::json::parse(export_json(inst));
  CHECK(j["kind"] == "base");
  CHECK(j["vertices"].size() == 42);
  CHECK(j["edges"].size() == 52);
  CHECK(j["pairs"].size() == 52);
  const auto dot = export_dot(inst);
  CHECK(dot.rfind("digraph", 0) == 0);
  CHECK(export_json(inst) == export_json(make(InstanceKind::base)));
}

}
