#pragma once

// Flat-file instance format: graph edge list, vertex label sidecar, pairs file
// with run-length canonical paths, and a manifest whose digest covers all
// three files plus its own body.

#include <filesystem>
#include <string>
#include <string_view>

#include "lbg/evaluate.hpp"

namespace lbg {

inline constexpr const char* kInstanceFormat = "lbg-instance/1";

std::string sha256_hex(std::string_view data);

std::string serialize_graph(const LayeredGraph& g);
std::string serialize_labels(const LayeredGraph& g);
std::string serialize_pairs(const PairSet& pairs);

// Path edge ids as comma-separated runs: "a" or "a:n" for a, a+1, ..., a+n-1.
std::string encode_path(std::span<const EdgeId> path);
std::vector<EdgeId> decode_path(std::string_view text);

struct InstanceText {
  std::string graph;
  std::string labels;
  std::string pairs;
  std::string manifest;
};

InstanceText serialize_instance(const BuiltInstance& inst);

// Throws CorruptInput on any digest, syntax or count mismatch. With
// check_digest false the digest and manifest counts are not compared, so
// hand-edited files can still be audited on their own content.
BuiltInstance parse_instance(const InstanceText& text, bool check_digest = true);

// Writes graph.txt, labels.txt, pairs.txt and manifest.txt into dir.
void write_instance(const BuiltInstance& inst, const std::filesystem::path& dir);
BuiltInstance read_instance(const std::filesystem::path& dir, bool check_digest = true);

// Digest recorded in a manifest, for matching candidates to instances.
std::string manifest_digest(const std::string& manifest_text);

// Candidate files: "u v" per line, "u v w" per line, or one kept edge id per
// line. Blank lines and lines starting with '#' are skipped.
ShortcutSet read_shortcuts(const std::filesystem::path& file);
WeightedEmulator read_emulator(const std::filesystem::path& file);
SpannerSubgraph read_spanner(const std::filesystem::path& file, std::int64_t edge_count);

std::string export_json(const BuiltInstance& inst);
std::string export_dot(const BuiltInstance& inst);

std::string read_file(const std::filesystem::path& file);
void write_file(const std::filesystem::path& file, std::string_view data);

}  // namespace lbg
