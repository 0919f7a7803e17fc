#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "soa/parts.hpp"

namespace soa {

// Exit codes shared by the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitOutput = 3;

struct ConvertConfig {
  std::filesystem::path snapshot_root;
  std::filesystem::path out_dir;
  int workers = 1;
  std::size_t buffer_size = kDefaultBufferCapacity;
  long long max_statements_per_file = 0;
  RdfFormat format = RdfFormat::NTriples;
  bool gzip = false;
  std::uint64_t seed = 7;
  std::set<EntityKind> kinds;  // empty: all kinds
  std::string log_level = "info";
};

/// FNV-1a (hex) over the canonical JSON of every field except the paths.
std::string config_digest(const ConvertConfig& config);

struct ConvertResult {
  int exit_code = kExitOk;
  Manifest manifest;
  std::vector<std::string> diagnostics;  // one line each: rejected records, I/O failures
  long long mapping_warnings = 0;        // non-fatal rule diagnostics
  double seconds = 0;
};

/// Snapshot to RDF part files plus manifest.json, ontology.ttl and void.ttl
/// in `out_dir`. Parts are assigned to workers round-robin by index in
/// (kind, date, sequence) order. Stale `*_part_*` files are removed first.
/// Never throws for input or output problems: they set the exit code.
ConvertResult convert(const ConvertConfig& config);

struct InvalidLine {
  std::string file;
  long line = 0;
  std::string message;
};

struct ValidateReport {
  long long files = 0;
  long long statements = 0;
  std::vector<InvalidLine> invalid;
  long long duplicate_statements = 0;  // repeats of an identical statement (graph included)
  long long dangling_references = 0;   // statements whose object entity has no statements of its own
  long long dangling_entities = 0;     // distinct such entities
};

/// Re-parses every statement of the inputs (files or directories of parts).
/// Throws Error("IoFailure") when an input is missing or unreadable.
ValidateReport validate_outputs(const std::vector<std::filesystem::path>& inputs);

nlohmann::json to_json(const ValidateReport& report);

}  // namespace soa
