#include "soa/ingest.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <regex>
#include <thread>

#include "soa/gzip_io.hpp"
#include "soa/log.hpp"

namespace fs = std::filesystem;

namespace soa {

namespace {

bool valid_iso_date(const std::string& s) {
  static const std::regex re(R"(\d{4}-\d{2}-\d{2})");
  if (!std::regex_match(s, re)) return false;
  int y = std::stoi(s.substr(0, 4)), m = std::stoi(s.substr(5, 2)), d = std::stoi(s.substr(8, 2));
  using namespace std::chrono;
  return year_month_day{year{y}, month{static_cast<unsigned>(m)}, day{static_cast<unsigned>(d)}}.ok();
}

bool part_order(const PartFile& a, const PartFile& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.updated_date != b.updated_date) return a.updated_date < b.updated_date;
  return a.sequence < b.sequence;
}

bool blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(), [](char c) { return c == ' ' || c == '\t' || c == '\r'; });
}

}  // namespace

std::size_t SnapshotLayout::part_count() const {
  std::size_t n = 0;
  for (const auto& [kind, list] : parts) n += list.size();
  return n;
}

std::vector<PartFile> SnapshotLayout::all_parts() const {
  std::vector<PartFile> out;
  for (const auto& [kind, list] : parts) out.insert(out.end(), list.begin(), list.end());
  std::sort(out.begin(), out.end(), part_order);
  return out;
}

SnapshotLayout discover(const fs::path& root) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) throw Error("MissingRoot", "snapshot root not found: " + root.string());

  SnapshotLayout layout;
  layout.root = root;
  auto warn = [&](std::string msg) {
    log::warn(msg);
    layout.warnings.push_back(std::move(msg));
  };

  static const std::regex part_re(R"(part_(\d+)\.gz)");
  fs::path data = root / "data";
  if (fs::is_directory(data, ec)) {
    for (const auto& kind_dir : fs::directory_iterator(data)) {
      if (!kind_dir.is_directory()) continue;
      auto kind = kind_from_plural(kind_dir.path().filename().string());
      if (!kind) {
        warn("ignoring unknown directory " + kind_dir.path().string());
        continue;
      }
      for (const auto& date_dir : fs::directory_iterator(kind_dir.path())) {
        std::string name = date_dir.path().filename().string();
        std::string date = name.starts_with("updated_date=") ? name.substr(13) : "";
        if (!date_dir.is_directory() || !valid_iso_date(date)) {
          warn("ignoring unknown entry " + date_dir.path().string());
          continue;
        }
        for (const auto& file : fs::directory_iterator(date_dir.path())) {
          std::smatch m;
          std::string fname = file.path().filename().string();
          if (!file.is_regular_file() || !std::regex_match(fname, m, part_re)) {
            warn("ignoring unknown file " + file.path().string());
            continue;
          }
          layout.parts[*kind].push_back({file.path(), *kind, date, std::stoi(m[1].str())});
        }
      }
    }
  }
  if (layout.part_count() == 0) throw Error("EmptySnapshot", "no part files under " + root.string());
  for (auto& [kind, list] : layout.parts) std::sort(list.begin(), list.end(), part_order);
  return layout;
}

std::optional<EntityId> record_entity_id(const nlohmann::json& fields) {
  auto it = fields.find("id");
  if (it == fields.end() || !it->is_string()) return std::nullopt;
  try {
    return parse_entity_ref(it->get_ref<const std::string&>());
  } catch (const Error&) {
    return std::nullopt;
  }
}

StreamStats stream_records(const PartFile& part, const RecordSink& sink) {
  StreamStats stats;
  LineReader reader(part.path);
  std::string line;
  long line_number = 0;
  while (reader.next(line)) {
    ++line_number;
    if (blank(line)) continue;
    nlohmann::json fields = nlohmann::json::parse(line, nullptr, false);
    if (fields.is_discarded()) {
      stats.malformed.push_back({part.path, line_number, "invalid JSON"});
      continue;
    }
    if (!fields.is_object()) {
      stats.malformed.push_back({part.path, line_number, "not a JSON object"});
      continue;
    }
    auto id = fields.find("id");
    if (id == fields.end() || !id->is_string()) {
      stats.malformed.push_back({part.path, line_number, "missing string member \"id\""});
      continue;
    }
    ++stats.records;
    sink(RawEntityRecord{part.kind, std::move(fields), &part, line_number});
  }
  return stats;
}

std::string dedup_key(const RawEntityRecord& rec) {
  if (auto id = record_entity_id(rec.fields)) return id->str();
  return rec.id();
}

bool DedupPlan::keeps(EntityKind kind, const std::string& id, std::size_t part_index, long line) const {
  auto k = chosen.find(kind);
  if (k == chosen.end()) return false;
  auto it = k->second.find(id);
  return it != k->second.end() && it->second.part_index == part_index && it->second.line_number == line;
}

DedupPlan plan_dedup(const SnapshotLayout& layout, int workers) {
  auto parts = layout.all_parts();
  std::vector<std::vector<std::pair<std::string, long>>> seen(parts.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr failure;

  auto work = [&] {
    for (std::size_t i = next++; i < parts.size(); i = next++) {
      try {
        stream_records(parts[i], [&](RawEntityRecord&& rec) { seen[i].emplace_back(dedup_key(rec), rec.line_number); });
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < std::max(1, workers); ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  // Parts are in ascending (kind, date, sequence) order: replace only when the
  // date is strictly later so the first occurrence within a date wins.
  DedupPlan plan;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    auto& table = plan.chosen[parts[i].kind];
    for (auto& [id, line] : seen[i]) {
      auto [it, inserted] = table.try_emplace(id, DedupPlan::Location{i, line});
      if (inserted) continue;
      ++plan.superseded;
      if (parts[it->second.part_index].updated_date < parts[i].updated_date) it->second = {i, line};
    }
  }
  return plan;
}

StreamStats dedupe_latest(const SnapshotLayout& layout, const RecordSink& sink) {
  DedupPlan plan = plan_dedup(layout);
  auto parts = layout.all_parts();
  StreamStats total;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    auto stats = stream_records(parts[i], [&](RawEntityRecord&& rec) {
      if (plan.keeps(rec.kind, dedup_key(rec), i, rec.line_number)) sink(std::move(rec));
    });
    total.records += stats.records;
    total.malformed.insert(total.malformed.end(), stats.malformed.begin(), stats.malformed.end());
  }
  return total;
}

}  // namespace soa
