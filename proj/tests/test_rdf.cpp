#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <random>

#include "soa/gzip_io.hpp"
#include "soa/rdf_parser.hpp"
#include "soa/rdf_writer.hpp"
#include "soa/rng.hpp"
#include "soa/vocab.hpp"
#include "support.hpp"

using namespace soa;
using soa::testing::TempDir;

namespace {

const Iri kS = trusted_iri("https://semopenalex.org/work/W1");
const Iri kTitle = trusted_iri("http://purl.org/dc/terms/title");
const Iri kWorks = trusted_iri("https://semopenalex.org/graph/works");

ParsedStatement as_parsed(const Quad& q, bool with_graph) {
  return {q.subject, q.predicate, q.object, with_graph ? std::optional<Iri>(q.graph) : std::nullopt};
}

std::string random_text(std::mt19937_64& rng) {
  static const std::vector<std::string> pieces{"a", "Z", " ", "\"", "\\", "\n", "\r", "\t", "é", "数", "🚀",
                                               "\x01", "\x7f", "'", ">", "<", "#", ".", "@", "^^"};
  std::string s;
  for (auto n = uniform_below(rng, 20); n > 0; --n) s += pieces[uniform_below(rng, pieces.size())];
  return s;
}

Quad random_quad(std::mt19937_64& rng) {
  Iri s = trusted_iri("https://semopenalex.org/work/W" + std::to_string(1 + uniform_below(rng, 5)));
  Iri p = trusted_iri("https://semopenalex.org/property/p" + std::to_string(uniform_below(rng, 3)));
  Iri g = trusted_iri("https://semopenalex.org/graph/g" + std::to_string(uniform_below(rng, 2)));
  auto object = [&]() -> Term {
    switch (uniform_below(rng, 4)) {
      case 0: return trusted_iri("https://example.org/é/" + std::to_string(uniform_below(rng, 9)));
      case 1: return Literal(random_text(rng));
      case 2: return Literal(std::to_string(uniform_below(rng, 1000)), vocab::xsd_integer());
      default: return Literal::lang_string(random_text(rng), uniform_below(rng, 2) ? "en" : "de-CH");
    }
  };
  return {s, p, object(), g};
}

}  // namespace

TEST(Serialize, EscapesQuotes) {
  Quad q{kS, kTitle, Literal("say \"hi\""), kWorks};
  EXPECT_EQ(serialize_statement(q, RdfFormat::NTriples),
            "<https://semopenalex.org/work/W1> <http://purl.org/dc/terms/title> "
            "\"say \\\"hi\\\"\"^^<http://www.w3.org/2001/XMLSchema#string> .");
}

TEST(Serialize, IntegerDatatypeIsExplicit) {
  Quad q{kS, kTitle, Literal("3", vocab::xsd_integer()), kWorks};
  auto line = serialize_statement(q, RdfFormat::NQuads);
  EXPECT_NE(line.find("\"3\"^^<http://www.w3.org/2001/XMLSchema#integer>"), std::string::npos);
  EXPECT_TRUE(line.ends_with("<https://semopenalex.org/graph/works> ."));
}

TEST(Serialize, EscapesControls) {
  EXPECT_EQ(escape_string("a\\b\nc\rd\te\x01"), "a\\\\b\\nc\\rd\\te\\u0001");
  EXPECT_EQ(escape_string("Größe"), "Größe");
}

TEST(Serialize, TrigGroupsByGraphAndAbbreviatesStrings) {
  Iri authors = trusted_iri("https://semopenalex.org/graph/authors");
  std::vector<Quad> quads{{kS, kTitle, Literal("a"), kWorks},
                          {trusted_iri("https://semopenalex.org/author/A1"), kTitle, Literal("b"), authors},
                          {kS, kTitle, Literal("c"), kWorks}};
  auto doc = write_trig(quads);
  EXPECT_NE(doc.find("<https://semopenalex.org/graph/works> {"), std::string::npos);
  EXPECT_EQ(doc.find("XMLSchema#string"), std::string::npos);
  auto parsed = parse_document(doc, RdfFormat::TriG, false);
  ASSERT_TRUE(parsed.errors.empty()) << parsed.errors[0].message;
  ASSERT_EQ(parsed.statements.size(), 3u);
  // Grouping: both works statements come before the authors statement.
  EXPECT_EQ(parsed.statements[1].graph, kWorks);
  EXPECT_EQ(parsed.statements[2].graph, authors);
}

TEST(Serialize, FormatNames) {
  EXPECT_EQ(format_of_path("works_part_0_0.nq.gz"), RdfFormat::NQuads);
  EXPECT_EQ(format_of_path("x.trig"), RdfFormat::TriG);
  EXPECT_FALSE(format_of_path("x.json").has_value());
  EXPECT_EQ(extension(RdfFormat::Turtle), "ttl");
}

// Property: parse(serialize(q)) == q for every syntax.
TEST(RoundTrip, RandomizedQuads) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Quad> quads;
    for (auto n = 1 + uniform_below(rng, 8); n > 0; --n) quads.push_back(random_quad(rng));
    for (auto format : {RdfFormat::NTriples, RdfFormat::NQuads, RdfFormat::TriG}) {
      std::string doc = format == RdfFormat::TriG ? write_trig(quads) : write_lines(quads, format);
      auto parsed = parse_document(doc, format, false);
      ASSERT_TRUE(parsed.errors.empty()) << parsed.errors[0].message << "\n" << doc;
      std::vector<ParsedStatement> expected;
      for (const auto& q : quads) expected.push_back(as_parsed(q, format != RdfFormat::NTriples));
      auto got = parsed.statements;
      if (format == RdfFormat::TriG) {
        std::sort(expected.begin(), expected.end());
        std::sort(got.begin(), got.end());
      }
      ASSERT_EQ(got, expected) << doc;
    }
    std::vector<Triple> triples;
    for (const auto& q : quads) triples.push_back(q.triple());
    auto ttl = parse_document(write_turtle(triples), RdfFormat::Turtle, false);
    ASSERT_TRUE(ttl.errors.empty()) << ttl.errors[0].message << "\n" << write_turtle(triples);
    std::vector<ParsedStatement> expected, got = ttl.statements;
    for (const auto& q : quads) expected.push_back(as_parsed(q, false));
    std::sort(expected.begin(), expected.end());
    std::sort(got.begin(), got.end());
    ASSERT_EQ(got, expected);
  }
}

TEST(Parser, RejectsGrammarViolations) {
  const char* bad[] = {
      "<a:b> <c:d> \"x\" .",  // fine, control
      "<a:b> <c:d> \"unterminated .",
      "<a:b> <c:d> <e f> .",
      "_:b1 <c:d> <e:f> .",
      "<rel> <c:d> <e:f> .",
      "<a:b> <c:d> \"x\"^^<c:d>",
      "<a:b> \"lit\" <e:f> .",
      "<a:b> <c:d> \"bad \\q escape\" .",
      "<a:b> <c:d> \"x\"@ .",
  };
  EXPECT_TRUE(parse_line(bad[0], false).has_value());
  for (std::size_t i = 1; i < std::size(bad); ++i) EXPECT_THROW(parse_line(bad[i], false), Error) << bad[i];
  EXPECT_FALSE(parse_line("   # comment", false).has_value());
  EXPECT_THROW(parse_line("<a:b> <c:d> <e:f> <g:h> .", false), Error);
  EXPECT_TRUE(parse_line("<a:b> <c:d> <e:f> <g:h> .", true).has_value());
}

TEST(Parser, RejectsInvalidUtf8) {
  EXPECT_FALSE(valid_utf8("\xC3"));
  EXPECT_FALSE(valid_utf8("\xED\xA0\x80"));  // surrogate
  EXPECT_TRUE(valid_utf8("Größe 🚀"));
  EXPECT_THROW(parse_line("<a:b> <c:d> \"\xff\" .", false), Error);
}

TEST(Parser, DecodesEscapes) {
  auto st = parse_line(R"(<a:b> <c:d> "é\U0001F680\t\"" .)", false);
  ASSERT_TRUE(st);
  EXPECT_EQ(std::get<Literal>(st->object).lexical(), "é🚀\t\"");
}

TEST(Parser, RawNewlineInLiteralIsOneInvalidLine) {
  TempDir t;
  std::string good = "<https://x.org/a> <https://x.org/p> \"ok\" .\n";
  std::ofstream(t / "broken.nt", std::ios::binary) << good << "<https://x.org/a> <https://x.org/p> \"broken\nhalf\" .\n"
                                                  << good;
  std::vector<SyntaxError> errors;
  long statements = 0;
  parse_file(t / "broken.nt", [&](ParsedStatement&&) { ++statements; }, [&](const SyntaxError& e) { errors.push_back(e); });
  ASSERT_EQ(errors.size(), 1u);
  EXPECT_EQ(errors[0].line, 2);
  EXPECT_EQ(statements, 2);
}

TEST(Parser, ReadsGzippedFiles) {
  TempDir t;
  std::string doc = "<https://x.org/a> <https://x.org/p> \"v\" <https://x.org/g> .\n";
  std::ofstream(t / "a.nq.gz", std::ios::binary) << gzip_compress(doc);
  std::vector<ParsedStatement> got;
  parse_file(t / "a.nq.gz", [&](ParsedStatement&& s) { got.push_back(std::move(s)); }, [](const SyntaxError&) { FAIL(); });
  ASSERT_EQ(got.size(), 1u);
  EXPECT_EQ(got[0].graph->str(), "https://x.org/g");
}

TEST(Parser, TurtleFeatures) {
  std::string doc = R"(@prefix ex: <https://example.org/> .
PREFIX xsd: <http://www.w3.org/2001/XMLSchema#>
ex:a a ex:C ;
  ex:p "x", 'y', """multi
line""" ;
  ex:n 42, -1.5, 2e3, true ;
  ex:l "t"@en-GB .
)";
  auto parsed = parse_document(doc, RdfFormat::Turtle, false);
  ASSERT_TRUE(parsed.errors.empty()) << parsed.errors[0].message;
  EXPECT_EQ(parsed.statements.size(), 9u);
  EXPECT_EQ(std::get<Literal>(parsed.statements[3].object).lexical(), "multi\nline");
  EXPECT_EQ(std::get<Literal>(parsed.statements[4].object).datatype(), vocab::xsd_integer());
}

// Cross-check against a third-party parser when one is installed.
TEST(Interop, RdflibAcceptsOutput) {
  if (std::system("python3 -c 'import rdflib' >/dev/null 2>&1") != 0) GTEST_SKIP() << "rdflib not available";
  TempDir t;
  std::mt19937_64 rng(4);
  std::vector<Quad> quads;
  for (int i = 0; i < 200; ++i) quads.push_back(random_quad(rng));
  std::ofstream(t / "q.nq", std::ios::binary) << write_lines(quads, RdfFormat::NQuads);
  std::ofstream(t / "q.trig", std::ios::binary) << write_trig(quads);
  std::set<Quad> distinct(quads.begin(), quads.end());
  std::string script =
      "import rdflib,sys\n"
      "for f,fmt in (('q.nq','nquads'),('q.trig','trig')):\n"
      "  g=rdflib.Dataset(); g.parse(sys.argv[1]+'/'+f, format=fmt)\n"
      "  print(len(list(g.quads((None,None,None,None)))))\n";
  std::ofstream(t / "check.py") << script;
  std::string cmd = "python3 " + (t / "check.py").string() + " " + t.path().string() + " > " + (t / "out.txt").string();
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  std::ifstream in(t / "out.txt");
  std::size_t nq = 0, trig = 0;
  in >> nq >> trig;
  EXPECT_EQ(nq, distinct.size());
  EXPECT_EQ(trig, distinct.size());
}
