#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include "oracles.hpp"
#include "soa/rdf_writer.hpp"
#include "soa/triple_index.hpp"
#include "support.hpp"

using namespace soa;
using soa::testing::TempDir;

namespace {

Iri ex(const std::string& local) { return Iri("https://example.org/" + local); }

std::vector<Triple> random_triples(std::mt19937_64& rng, std::size_t n) {
  std::vector<Triple> out;
  for (std::size_t i = 0; i < n; ++i) {
    Iri s = ex("s" + std::to_string(uniform_below(rng, 30)));
    Iri p = ex("p" + std::to_string(uniform_below(rng, 4)));
    Term o = uniform_below(rng, 3) ? Term(ex("s" + std::to_string(uniform_below(rng, 30))))
                                   : Term(Literal("v" + std::to_string(uniform_below(rng, 10))));
    out.push_back({s, p, o});
  }
  return out;
}

TripleIndex build(const std::vector<Triple>& triples) {
  TripleIndex::Builder b;
  for (const auto& t : triples) b.add(t.subject, t.predicate, t.object, std::nullopt);
  return b.build();
}

}  // namespace

TEST(TripleIndex, SetSemanticsAndReport) {
  TripleIndex::Builder b;
  Quad q{ex("a"), ex("p"), Literal("x"), ex("g1")};
  b.add(q);
  b.add(Quad{ex("a"), ex("p"), Literal("x"), ex("g2")});
  b.add(Quad{ex("a"), ex("p"), Literal("y"), ex("g2")});
  LoadReport r;
  auto index = b.build(&r);
  EXPECT_EQ(r.read, 3);
  EXPECT_EQ(r.duplicates, 1);
  EXPECT_EQ(r.unique, 2);
  EXPECT_EQ(index.size(), 2u);
  // The first occurrence keeps its graph.
  auto g = index.graph_of(0);
  ASSERT_TRUE(g);
  EXPECT_EQ(std::get<Iri>(index.term(*g)), ex("g1"));
}

TEST(TripleIndex, ScanAgreesWithFilterForEveryBindingShape) {
  std::mt19937_64 rng(8);
  auto triples = random_triples(rng, 400);
  auto index = build(triples);
  for (int trial = 0; trial < 200; ++trial) {
    const auto& pick = index.statements()[uniform_below(rng, index.size())];
    int mask = static_cast<int>(uniform_below(rng, 8));
    std::optional<TermId> s = mask & 1 ? std::optional(pick.s) : std::nullopt;
    std::optional<TermId> p = mask & 2 ? std::optional(pick.p) : std::nullopt;
    std::optional<TermId> o = mask & 4 ? std::optional(pick.o) : std::nullopt;
    std::vector<IdTriple> got, expected;
    index.scan(s, p, o, [&](const IdTriple& t) { got.push_back(t); });
    for (const auto& t : index.statements())
      if ((!s || t.s == *s) && (!p || t.p == *p) && (!o || t.o == *o)) expected.push_back(t);
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, expected);
    EXPECT_EQ(index.count(s, p, o), expected.size());
  }
}

TEST(Match, Example) {
  std::vector<Triple> t{{ex("w1"), ex("concept"), ex("c1")},
                        {ex("w2"), ex("concept"), ex("c1")},
                        {ex("w2"), ex("concept"), ex("c2")},
                        {ex("c1"), ex("label"), Literal("Semantic Web")},
                        {ex("c2"), ex("label"), Literal("Other")}};
  auto index = build(t);
  std::vector<Pattern> bgp{{var("w"), Term(ex("concept")), var("c")},
                           {var("c"), Term(ex("label")), Term(Literal("Semantic Web"))}};
  auto rows = match(index, bgp);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].at("w"), Term(ex("w1")));
  EXPECT_EQ(rows[1].at("w"), Term(ex("w2")));
  std::vector<Pattern> missing{{var("w"), Term(ex("nowhere")), var("c")}};
  EXPECT_TRUE(match(index, missing).empty());
}

TEST(Match, RepeatedVariableWithinPattern) {
  std::vector<Triple> t{{ex("a"), ex("p"), ex("a")}, {ex("a"), ex("p"), ex("b")}};
  auto index = build(t);
  std::vector<Pattern> bgp{{var("x"), Term(ex("p")), var("x")}};
  auto rows = match(index, bgp);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].at("x"), Term(ex("a")));
}

// Property: the indexed join equals exhaustive backtracking.
TEST(Match, EqualsNaiveOracle) {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 5; ++round) {
    auto triples = random_triples(rng, 150);
    auto index = build(triples);
    for (int q = 0; q < 40; ++q) {
      auto bgp = soa::testing::random_bgp(rng, triples, 3);
      ASSERT_EQ(match(index, bgp), soa::testing::naive_match(triples, bgp)) << "round " << round << " query " << q;
    }
  }
}

TEST(Load, ReadsDirectoriesAndReportsSyntaxErrors) {
  TempDir t;
  std::vector<Quad> quads{{ex("a"), ex("p"), Literal("x"), ex("g")}, {ex("b"), ex("p"), ex("a"), ex("g")}};
  std::ofstream(t / "works_part_0_0.nq", std::ios::binary) << write_lines(quads, RdfFormat::NQuads);
  std::ofstream(t / "works_part_1_0.nq", std::ios::binary) << write_lines(quads, RdfFormat::NQuads);
  std::ofstream(t / "manifest.json") << "{}";
  std::vector<std::filesystem::path> in{t.path()};
  EXPECT_EQ(expand_inputs(in).size(), 2u);
  LoadReport r;
  auto index = load(in, &r);
  EXPECT_EQ(index.size(), 2u);
  EXPECT_EQ(r.duplicates, 2);

  std::ofstream(t / "bad.nt") << "<https://x.org/a> <https://x.org/p> .\n";
  std::vector<std::filesystem::path> bad{t / "bad.nt"};
  try {
    load(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "ParseFailure");
    EXPECT_NE(std::string(e.what()).find("bad.nt:1"), std::string::npos);
  }
  std::vector<std::filesystem::path> missing{t / "nope.nt"};
  EXPECT_THROW(load(missing), Error);
}
