#include <gtest/gtest.h>

#include <fstream>

#include "soa/gzip_io.hpp"
#include "soa/parts.hpp"
#include "soa/rdf_parser.hpp"
#include "support.hpp"

using namespace soa;
using soa::testing::TempDir;
namespace fs = std::filesystem;

namespace {

std::vector<Quad> make_quads(int n) {
  std::vector<Quad> out;
  for (int i = 0; i < n; ++i)
    out.push_back({trusted_iri("https://semopenalex.org/work/W" + std::to_string(i + 1)),
                   trusted_iri("http://purl.org/dc/terms/title"), Literal("title \"" + std::to_string(i) + "\"\n"),
                   trusted_iri("https://semopenalex.org/graph/works")});
  return out;
}

std::string slurp(const fs::path& p) { return read_file(p); }

}  // namespace

TEST(TripleBuffer, FlushesAtCapacityInOrder) {
  std::vector<std::size_t> batches;
  std::vector<std::string> order;
  TripleBuffer buffer(10'000, [&](std::span<const Quad> q) {
    batches.push_back(q.size());
    for (const auto& x : q) order.push_back(x.subject.str());
  });
  auto quads = make_quads(25'000);
  for (const auto& q : quads) buffer.push(q);
  buffer.flush();
  EXPECT_EQ(batches, (std::vector<std::size_t>{10'000, 10'000, 5'000}));
  EXPECT_EQ(buffer.flushes(), 3u);
  ASSERT_EQ(order.size(), quads.size());
  for (std::size_t i = 0; i < quads.size(); i += 997) EXPECT_EQ(order[i], quads[i].subject.str());
  EXPECT_THROW(TripleBuffer(0, [](std::span<const Quad>) {}), Error);
}

TEST(WriteParts, OneFileThreeFlushes) {
  TempDir t;
  auto quads = make_quads(25'000);
  auto parts = write_parts(quads, t.path(), "works", 0, PartOptions{});
  ASSERT_EQ(parts.size(), 1u);
  EXPECT_EQ(parts[0].file, "works_part_0_0.nt");
  EXPECT_EQ(parts[0].statements, 25'000);
  EXPECT_EQ(parts[0].flushes, 3u);
  EXPECT_EQ(parts[0].bytes, fs::file_size(t / parts[0].file));
}

TEST(WriteParts, EmptyStreamWritesNothing) {
  TempDir t;
  EXPECT_TRUE(write_parts({}, t.path(), "works", 0, PartOptions{}).empty());
  EXPECT_TRUE(fs::is_empty(t.path()));
}

TEST(WriteParts, SplitsByStatementLimit) {
  TempDir t;
  PartOptions opt;
  opt.buffer_capacity = 7;
  opt.max_statements_per_file = 10;
  auto parts = write_parts(make_quads(25), t.path(), "authors", 3, opt);
  ASSERT_EQ(parts.size(), 3u);
  EXPECT_EQ(parts[2].file, "authors_part_3_2.nt");
  EXPECT_EQ(parts[0].statements + parts[1].statements + parts[2].statements, 25);
}

TEST(WriteParts, StatementCountMatchesParsedLines) {
  TempDir t;
  for (auto format : {RdfFormat::NTriples, RdfFormat::NQuads, RdfFormat::TriG}) {
    PartOptions opt;
    opt.format = format;
    opt.buffer_capacity = 13;
    auto parts = write_parts(make_quads(100), t.path(), "works", 1, opt);
    ASSERT_EQ(parts.size(), 1u);
    long n = 0;
    parse_file(t / parts[0].file, [&](ParsedStatement&&) { ++n; }, [](const SyntaxError& e) { FAIL() << e.message; });
    EXPECT_EQ(n, parts[0].statements);
  }
}

// Decompressed bytes equal uncompressed-mode output; recompression is stable.
TEST(WriteParts, CompressionIsTransparent) {
  TempDir plain, packed;
  auto quads = make_quads(3000);
  PartOptions opt;
  opt.buffer_capacity = 1000;
  auto a = write_parts(quads, plain.path(), "works", 0, opt);
  opt.gzip = true;
  auto b = write_parts(quads, packed.path(), "works", 0, opt);
  EXPECT_EQ(b[0].file, "works_part_0_0.nt.gz");
  std::ifstream in(packed / b[0].file, std::ios::binary);
  std::string gz((std::istreambuf_iterator<char>(in)), {});
  EXPECT_EQ(gzip_decompress(gz), slurp(plain / a[0].file));
  EXPECT_EQ(b[0].uncompressed_bytes, a[0].bytes);
  EXPECT_LT(b[0].bytes, b[0].uncompressed_bytes);
  EXPECT_EQ(gzip_compress(gzip_decompress(gz)).size(), gz.size());
  auto c = write_parts(quads, plain.path(), "again", 0, opt);
  EXPECT_EQ(slurp(plain / c[0].file), slurp(packed / b[0].file));
}

TEST(WriteParts, UnwritableDirectoryFails) {
  TempDir t;
  std::ofstream(t / "file") << "x";
  try {
    write_parts(make_quads(3), t / "file", "works", 0, PartOptions{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "IoFailure");
  }
}

TEST(Manifest, TotalsMustMatch) {
  TempDir t;
  Manifest m;
  m.snapshot_root = "/snap";
  m.config_digest = "abc";
  OutputPart a, b;
  a.file = "works_part_0_0.nt";
  a.statements = 10;
  b.file = "works_part_1_0.nt";
  b.statements = 5;
  m.parts = {a, b};
  m.triple_total = 15;
  m.entity_counts[EntityKind::Work] = 4;
  write_manifest(t / "manifest.json", m);
  auto back = read_manifest(t / "manifest.json");
  EXPECT_EQ(back.triple_total, 15);
  EXPECT_EQ(back.parts.size(), 2u);
  EXPECT_EQ(back.entity_counts.size(), 6u);
  EXPECT_EQ(back.entity_counts[EntityKind::Work], 4);
  m.triple_total = 16;
  EXPECT_THROW(write_manifest(t / "bad.json", m), Error);
}

TEST(Manifest, ReportsCompression) {
  Manifest m;
  OutputPart p;
  p.bytes = 150;
  p.uncompressed_bytes = 1000;
  m.parts = {p};
  auto j = to_json(m);
  EXPECT_DOUBLE_EQ(j["compression"]["size_reduction_percent"].get<double>(), 85.0);
  EXPECT_EQ(j["compression"]["reference_reduction_percent"], 80);
}

TEST(Manifest, Timestamp) {
  auto ts = utc_timestamp();
  EXPECT_EQ(ts.size(), 20u);
  EXPECT_EQ(ts.back(), 'Z');
}
