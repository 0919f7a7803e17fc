#include <gtest/gtest.h>

#include <fstream>

#include "soa/gzip_io.hpp"
#include "soa/ingest.hpp"
#include "support.hpp"

using namespace soa;
using soa::testing::TempDir;
namespace fs = std::filesystem;

namespace {

void write_part(const fs::path& root, const std::string& kind, const std::string& date, int seq,
                const std::string& content) {
  fs::path dir = root / "data" / kind / ("updated_date=" + date);
  fs::create_directories(dir);
  char name[32];
  std::snprintf(name, sizeof(name), "part_%03d.gz", seq);
  std::ofstream(dir / name, std::ios::binary) << gzip_compress(content);
}

std::string record(const std::string& id, const std::string& name) {
  return R"({"id":"https://openalex.org/)" + id + R"(","display_name":")" + name + "\"}\n";
}

}  // namespace

TEST(Discover, FindsPartsInOrder) {
  TempDir t;
  write_part(t.path(), "works", "2023-05-01", 1, record("W1", "a"));
  write_part(t.path(), "works", "2023-05-01", 0, record("W2", "b"));
  write_part(t.path(), "works", "2023-01-01", 3, record("W3", "c"));
  write_part(t.path(), "authors", "2023-05-01", 0, record("A1", "d"));
  auto layout = discover(t.path());
  EXPECT_EQ(layout.part_count(), 4u);
  auto all = layout.all_parts();
  ASSERT_EQ(all.size(), 4u);
  EXPECT_EQ(all[0].kind, EntityKind::Work);
  EXPECT_EQ(all[0].updated_date, "2023-01-01");
  EXPECT_EQ(all[1].sequence, 0);
  EXPECT_EQ(all[2].sequence, 1);
  EXPECT_EQ(all[3].kind, EntityKind::Author);
}

TEST(Discover, WarnsAboutUnknownEntries) {
  TempDir t;
  write_part(t.path(), "works", "2023-05-01", 0, record("W1", "a"));
  fs::create_directories(t / "data/funders/updated_date=2023-05-01");
  fs::create_directories(t / "data/works/updated_date=2023-13-01");
  std::ofstream(t / "data/works/updated_date=2023-05-01/manifest") << "x";
  auto layout = discover(t.path());
  EXPECT_EQ(layout.part_count(), 1u);
  EXPECT_EQ(layout.warnings.size(), 3u);
}

TEST(Discover, MissingAndEmptyRoots) {
  TempDir t;
  try {
    discover(t / "absent");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "MissingRoot");
  }
  try {
    discover(t.path());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "EmptySnapshot");
  }
}

TEST(StreamRecords, CountsNonblankLinesAndSkipsMalformed) {
  TempDir t;
  std::string content = record("W1", "a") + "\n   \n" + "{not json}\n" + "[1,2]\n" + R"({"x":1})" + "\n" +
                        record("W2", "b") + record("W3", "c");
  write_part(t.path(), "works", "2023-05-01", 0, content);
  auto layout = discover(t.path());
  std::vector<long> lines;
  auto stats = stream_records(layout.all_parts()[0], [&](RawEntityRecord&& r) { lines.push_back(r.line_number); });
  EXPECT_EQ(stats.records, 3);
  EXPECT_EQ(lines, (std::vector<long>{1, 7, 8}));
  ASSERT_EQ(stats.malformed.size(), 3u);
  EXPECT_EQ(stats.malformed[0].line_number, 4);

  // Independent oracle: decompress and count nonblank lines.
  std::ifstream in(layout.all_parts()[0].path, std::ios::binary);
  std::string packed((std::istreambuf_iterator<char>(in)), {});
  auto text = gzip_decompress(packed);
  long nonblank = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    if (text.substr(start, end - start).find_first_not_of(" \t\r") != std::string::npos) ++nonblank;
    start = end + 1;
  }
  EXPECT_EQ(stats.records + static_cast<long>(stats.malformed.size()), nonblank);
}

TEST(StreamRecords, HandlesMissingFinalNewline) {
  TempDir t;
  write_part(t.path(), "works", "2023-05-01", 0, record("W1", "a") + R"({"id":"W2"})");
  long n = 0;
  auto stats = stream_records(discover(t.path()).all_parts()[0], [&](RawEntityRecord&&) { ++n; });
  EXPECT_EQ(n, 2);
  EXPECT_EQ(stats.records, 2);
}

TEST(StreamRecords, TruncatedArchiveIsCorrupt) {
  TempDir t;
  fs::path dir = t / "data/works/updated_date=2023-05-01";
  fs::create_directories(dir);
  std::string packed = gzip_compress(record("W1", "a") + record("W2", "b"));
  std::ofstream(dir / "part_000.gz", std::ios::binary) << packed.substr(0, packed.size() / 2);
  try {
    stream_records(discover(t.path()).all_parts()[0], [](RawEntityRecord&&) {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "CorruptArchive");
  }
}

TEST(Dedup, LatestDateWins) {
  TempDir t;
  write_part(t.path(), "works", "2023-01-01", 0, record("W1", "old"));
  write_part(t.path(), "works", "2023-03-01", 0, record("W1", "mid"));
  write_part(t.path(), "works", "2023-05-01", 0, record("W1", "new") + record("W2", "only"));
  std::vector<std::string> names;
  dedupe_latest(discover(t.path()), [&](RawEntityRecord&& r) { names.push_back(r.fields["display_name"]); });
  EXPECT_EQ(names, (std::vector<std::string>{"new", "only"}));
  EXPECT_EQ(plan_dedup(discover(t.path())).superseded, 2);
}

TEST(Dedup, FirstOccurrenceWithinADateWins) {
  TempDir t;
  write_part(t.path(), "works", "2023-05-01", 0, record("W1", "first") + R"({"id":"W1","display_name":"second"})" "\n");
  write_part(t.path(), "works", "2023-05-01", 1, record("W1", "third"));
  std::vector<std::string> names;
  dedupe_latest(discover(t.path()), [&](RawEntityRecord&& r) { names.push_back(r.fields["display_name"]); });
  EXPECT_EQ(names, (std::vector<std::string>{"first"}));
}

TEST(Dedup, PlanIsIndependentOfWorkerCount) {
  TempDir t;
  for (int p = 0; p < 6; ++p) {
    std::string content;
    for (int i = 0; i < 20; ++i) content += record("W" + std::to_string(1 + (p * 7 + i) % 50), "n");
    write_part(t.path(), "works", p % 2 ? "2023-05-01" : "2023-04-01", p, content);
  }
  auto layout = discover(t.path());
  auto one = plan_dedup(layout, 1), four = plan_dedup(layout, 4);
  EXPECT_EQ(one.superseded, four.superseded);
  for (const auto& [id, loc] : one.chosen.at(EntityKind::Work)) {
    const auto& other = four.chosen.at(EntityKind::Work).at(id);
    EXPECT_EQ(loc.part_index, other.part_index);
    EXPECT_EQ(loc.line_number, other.line_number);
  }
}

TEST(RecordEntityId, NormalizesUrls) {
  EXPECT_EQ(record_entity_id(nlohmann::json{{"id", "https://openalex.org/W5"}})->str(), "W5");
  EXPECT_FALSE(record_entity_id(nlohmann::json{{"id", 5}}).has_value());
  EXPECT_FALSE(record_entity_id(nlohmann::json{{"name", "x"}}).has_value());
}

TEST(Gzip, RoundTripsAndIsStable) {
  std::string text(10000, 'a');
  for (std::size_t i = 0; i < text.size(); i += 7) text[i] = static_cast<char>('a' + i % 26);
  auto packed = gzip_compress(text);
  EXPECT_EQ(gzip_decompress(packed), text);
  EXPECT_EQ(gzip_compress(gzip_decompress(packed)), packed);
  EXPECT_LT(packed.size(), text.size());
}
