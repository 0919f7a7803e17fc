#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <unordered_map>
#include <string>
#include <vector>

#include "json.hpp"
#include "soa/model.hpp"

namespace soa {

struct PartFile {
  std::filesystem::path path;
  EntityKind kind;
  std::string updated_date;  // YYYY-MM-DD
  int sequence = 0;
};

struct SnapshotLayout {
  std::filesystem::path root;
  std::map<EntityKind, std::vector<PartFile>> parts;  // sorted by (date, sequence)
  std::vector<std::string> warnings;

  std::size_t part_count() const;
  /// All parts, ordered by (kind, date, sequence).
  std::vector<PartFile> all_parts() const;
};

/// Scans `<root>/data/<plural>/updated_date=YYYY-MM-DD/part_NNN.gz`.
/// Throws Error("MissingRoot") or Error("EmptySnapshot").
SnapshotLayout discover(const std::filesystem::path& root);

struct RawEntityRecord {
  EntityKind kind;
  nlohmann::json fields;
  const PartFile* source = nullptr;
  long line_number = 0;

  const std::string& id() const { return fields.at("id").get_ref<const std::string&>(); }
};

struct MalformedLine {
  std::filesystem::path path;
  long line_number;
  std::string reason;
};

struct StreamStats {
  long records = 0;
  std::vector<MalformedLine> malformed;
};

using RecordSink = std::function<void(RawEntityRecord&&)>;

/// Streams one record per nonblank line, in file order. Malformed lines are
/// collected in the returned stats and skipped. Throws Error("CorruptArchive")
/// when the compressed stream is damaged.
StreamStats stream_records(const PartFile& part, const RecordSink& sink);

/// Canonical id when parseable, the raw "id" string otherwise.
std::string dedup_key(const RawEntityRecord& record);

/// Which (part, line) carries the surviving record of each entity id.
struct DedupPlan {
  struct Location {
    std::size_t part_index;  // into SnapshotLayout::all_parts()
    long line_number;
  };
  std::map<EntityKind, std::unordered_map<std::string, Location>> chosen;
  long superseded = 0;

  bool keeps(EntityKind kind, const std::string& id, std::size_t part_index, long line) const;
};

/// Pre-pass over every part: for each id keep the record from the latest
/// updated_date; within that date the first occurrence wins. `workers` parts
/// are scanned concurrently.
DedupPlan plan_dedup(const SnapshotLayout& layout, int workers = 1);

/// Streams the deduplicated records of every part, single-threaded, in
/// layout order. Returns the combined stream stats.
StreamStats dedupe_latest(const SnapshotLayout& layout, const RecordSink& sink);

/// Normalizes the record's "id" member to a canonical id string. Returns
/// nullopt when it is absent or malformed.
std::optional<EntityId> record_entity_id(const nlohmann::json& fields);

}  // namespace soa
