#include <gtest/gtest.h>

#include <fstream>
#include <map>
#include <sstream>

#include "soa/model.hpp"
#include "soa/gzip_io.hpp"
#include "soa/samplegen.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using soa::testing::TempDir;

namespace {

std::map<std::string, std::string> read_tree(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (!e.is_regular_file()) continue;
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    files[fs::relative(e.path(), root).string()] = ss.str();
  }
  return files;
}

soa::SampleConfig small(std::uint64_t seed, double rate) {
  soa::SampleConfig c;
  c.seed = seed;
  c.edge_case_rate = rate;
  c.sizes = {120, 40, 8, 8, 10, 3};
  c.records_per_part = 50;
  return c;
}

long long total_lines(const fs::path& root) {
  long long n = 0;
  for (const auto& [name, bytes] : read_tree(root / "data")) {
    auto text = soa::gzip_decompress(bytes);
    for (char c : text) n += c == '\n';
  }
  return n;
}

}  // namespace

TEST(Samplegen, SameSeedSameBytes) {
  TempDir a("sg_a"), b("sg_b");
  soa::generate_sample(a.path(), small(7, 0.3));
  soa::generate_sample(b.path(), small(7, 0.3));
  auto ta = read_tree(a.path()), tb = read_tree(b.path());
  EXPECT_EQ(ta, tb);
  TempDir c("sg_c");
  soa::generate_sample(c.path(), small(8, 0.3));
  EXPECT_NE(read_tree(c.path()), ta);
}

TEST(Samplegen, LayoutAndCounts) {
  TempDir dir("sg_layout");
  auto cfg = small(3, 0.0);
  cfg.sizes.works = 5;
  auto truth = soa::generate_sample(dir.path(), cfg);
  auto works = dir.path() / "data" / "works" / (std::string("updated_date=") + soa::kLatestDate);
  ASSERT_TRUE(fs::exists(works / "part_000.gz"));
  EXPECT_FALSE(fs::exists(works / "part_001.gz"));
  std::ifstream in(works / "part_000.gz", std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  auto text = soa::gzip_decompress(ss.str());
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 5);
  EXPECT_EQ(truth.entity_counts.at(soa::EntityKind::Work), 5);
  EXPECT_EQ(truth.records_with_edge_case, 0);
  EXPECT_EQ(truth.superseded_records, 0);
  EXPECT_EQ(total_lines(dir.path()), truth.records_written);
  EXPECT_TRUE(fs::exists(dir / "ground_truth.json"));
}

TEST(Samplegen, FullRateMarksEveryRecord) {
  TempDir dir("sg_rate");
  auto truth = soa::generate_sample(dir.path(), small(5, 1.0));
  long long entities = 0;
  for (const auto& [kind, n] : truth.entity_counts) entities += n;
  EXPECT_EQ(truth.records_with_edge_case, entities);
  long long by_case = 0;
  for (const auto& [name, n] : truth.edge_cases) by_case += n;
  EXPECT_EQ(by_case, entities);
  EXPECT_GT(truth.superseded_records, 0);
  EXPECT_EQ(total_lines(dir.path()), truth.records_written);
  EXPECT_EQ(truth.records_written, entities + truth.superseded_records);
}

TEST(Samplegen, GroundTruthRoundTrip) {
  TempDir dir("sg_json");
  auto truth = soa::generate_sample(dir.path(), small(9, 0.3));
  auto back = soa::read_ground_truth(dir / "ground_truth.json");
  EXPECT_EQ(soa::to_json(back), soa::to_json(truth));
  EXPECT_EQ(back.top_cited, truth.top_cited);
  EXPECT_EQ(back.trend, truth.trend);
  EXPECT_EQ(back.triple_total, truth.triple_total);
  EXPECT_FALSE(truth.top_cited.empty());
  EXPECT_EQ(truth.trend.size(), soa::trend_concepts().size() * 12);
}

TEST(Samplegen, RejectsBadConfig) {
  TempDir dir("sg_bad");
  auto cfg = small(1, 0.1);
  cfg.sizes.concepts = 3;
  EXPECT_THROW(soa::generate_sample(dir.path(), cfg), soa::Error);
  cfg = small(1, 1.5);
  EXPECT_THROW(soa::generate_sample(dir.path(), cfg), soa::Error);
  cfg = small(1, 0.1);
  cfg.records_per_part = 0;
  EXPECT_THROW(soa::generate_sample(dir.path(), cfg), soa::Error);
}
