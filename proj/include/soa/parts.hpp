#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "soa/gzip_io.hpp"
#include "soa/model.hpp"
#include "soa/rdf_writer.hpp"

namespace soa {

inline constexpr std::size_t kDefaultBufferCapacity = 10'000;

/// Statement buffer handed to `sink` whenever it reaches `capacity`, and once
/// more for the remainder on flush().
class TripleBuffer {
 public:
  using Sink = std::function<void(std::span<const Quad>)>;

  TripleBuffer(std::size_t capacity, Sink sink);

  void push(Quad quad);
  void flush();

  std::size_t size() const noexcept { return quads_.size(); }
  std::size_t capacity() const noexcept { return capacity_; }
  std::size_t flushes() const noexcept { return flushes_; }

 private:
  std::size_t capacity_;
  Sink sink_;
  std::vector<Quad> quads_;
  std::size_t flushes_ = 0;
};

struct OutputPart {
  std::string file;  // name relative to the output directory
  std::string kind;  // label used in the name, e.g. "works"
  int worker = 0;
  int sequence = 0;
  RdfFormat format = RdfFormat::NTriples;
  bool compressed = false;
  long long statements = 0;
  std::uint64_t bytes = 0;               // on disk
  std::uint64_t uncompressed_bytes = 0;  // before gzip
  std::size_t flushes = 0;
};

struct PartOptions {
  RdfFormat format = RdfFormat::NTriples;
  bool gzip = false;
  std::size_t buffer_capacity = kDefaultBufferCapacity;
  long long max_statements_per_file = 0;  // 0: one file per (worker, kind)
};

/// Buffered writer for one worker and one kind. Files are named
/// `<kind>_part_<worker>_<seq>.<ext>[.gz]` and are created on first flush.
/// On an I/O failure the partially written file is removed.
class PartWriter {
 public:
  PartWriter(std::filesystem::path dir, std::string kind, int worker, PartOptions options);
  ~PartWriter();
  PartWriter(PartWriter&&) noexcept;
  PartWriter& operator=(PartWriter&&) noexcept;

  void write(Quad quad);
  /// Flushes the buffer, closes the current file and returns every part.
  std::vector<OutputPart> finish();
  /// Closes and deletes whatever was written.
  void abort();

 private:
  struct State;
  std::unique_ptr<State> state_;
};

/// Writes a whole quad sequence through a PartWriter.
std::vector<OutputPart> write_parts(std::span<const Quad> quads, const std::filesystem::path& out_dir,
                                    const std::string& kind, int worker, const PartOptions& options);

struct Manifest {
  std::string snapshot_root;
  std::string config_digest;
  std::map<EntityKind, long long> entity_counts;
  std::vector<OutputPart> parts;
  long long triple_total = 0;
  long long rejected_records = 0;
  long long malformed_lines = 0;
  long long superseded_records = 0;
  std::string generated_at;  // ISO-8601 UTC; the only run-dependent field
};

nlohmann::json to_json(const Manifest& manifest);
Manifest manifest_from_json(const nlohmann::json& j);

/// Writes `manifest.json` style output. Throws Error("InconsistentManifest")
/// when triple_total differs from the sum of part statement counts, and
/// Error("IoFailure") when the file cannot be written.
void write_manifest(const std::filesystem::path& path, const Manifest& manifest);
Manifest read_manifest(const std::filesystem::path& path);

/// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

}  // namespace soa
