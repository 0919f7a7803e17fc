#include <gtest/gtest.h>

#include <random>

#include "soa/model.hpp"
#include "soa/rng.hpp"
#include "soa/vocab.hpp"

using namespace soa;

TEST(EntityId, ParsesCanonicalIds) {
  auto id = parse_entity_id("W4239696231");
  EXPECT_EQ(id.kind(), EntityKind::Work);
  EXPECT_EQ(id.digits(), "4239696231");
  EXPECT_EQ(id.str(), "W4239696231");
}

TEST(EntityId, AcceptsOpenAlexUrls) {
  EXPECT_EQ(parse_entity_ref("https://openalex.org/A123").str(), "A123");
  EXPECT_EQ(parse_entity_ref("I42").kind(), EntityKind::Institution);
}

TEST(EntityId, RejectsMalformedIds) {
  for (const char* bad : {"", "W", "X12", "W012", "W12a", "w12", "W1234567890123", "https://example.org/W1"})
    EXPECT_THROW(parse_entity_ref(bad), Error) << bad;
}

TEST(EntityId, MintsSegmentIris) {
  EXPECT_EQ(mint_entity_iri(parse_entity_id("W1")).str(), "https://semopenalex.org/work/W1");
  EXPECT_EQ(mint_entity_iri(parse_entity_id("C7")).str(), "https://semopenalex.org/concept/C7");
  EXPECT_EQ(mint_entity_iri(parse_entity_id("P7")).str(), "https://semopenalex.org/publisher/P7");
}

// Property: mint then recognize is the identity for every kind and digit string.
TEST(EntityId, RoundTripsThroughIri) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    auto kind = kAllKinds[uniform_below(rng, kAllKinds.size())];
    std::string digits(1, static_cast<char>('1' + uniform_below(rng, 9)));
    for (auto n = uniform_below(rng, 12); n > 0; --n) digits += static_cast<char>('0' + uniform_below(rng, 10));
    EntityId id(kind, digits);
    auto back = entity_id_of(mint_entity_iri(id));
    ASSERT_TRUE(back.has_value()) << id.str();
    EXPECT_EQ(*back, id);
    EXPECT_EQ(parse_entity_id(id.str()), id);
  }
}

TEST(EntityKind, NamesAreConsistent) {
  for (auto kind : kAllKinds) {
    EXPECT_EQ(kind_from_segment(segment(kind)), kind);
    EXPECT_EQ(kind_from_plural(plural(kind)), kind);
    EXPECT_EQ(kind_from_prefix(prefix_letter(kind)), kind);
  }
  EXPECT_FALSE(kind_from_segment("funder").has_value());
}

TEST(Iri, ChecksCharacters) {
  EXPECT_FALSE(check_iri("https://semopenalex.org/work/W1"));
  EXPECT_EQ(check_iri(""), IriProblem::Empty);
  EXPECT_EQ(check_iri("no-scheme"), IriProblem::NoScheme);
  EXPECT_EQ(check_iri("1http://x"), IriProblem::NoScheme);
  EXPECT_EQ(check_iri("http://a b"), IriProblem::Space);
  EXPECT_EQ(check_iri("http://a\nb"), IriProblem::ControlCharacter);
  EXPECT_EQ(check_iri("http://a<b"), IriProblem::ForbiddenCharacter);
  EXPECT_EQ(check_iri("http://a\\b"), IriProblem::ForbiddenCharacter);
  EXPECT_THROW(Iri("http://a b"), Error);
}

TEST(AuxIri, ConcatenatesParts) {
  std::vector<std::string> parts{"W1", "A2"};
  EXPECT_EQ(mint_aux_iri(AuxKind::AuthorPosition, parts).str(), "https://semopenalex.org/authorposition/W1A2");
  std::vector<std::string> year{"I5", "2021"};
  EXPECT_EQ(mint_aux_iri(AuxKind::CountsByYear, year).str(), "https://semopenalex.org/countsbyyear/I52021");
  std::vector<std::string> bad{"W1", "a-b"};
  EXPECT_THROW(mint_aux_iri(AuxKind::Geo, bad), Error);
  EXPECT_TRUE(is_aux_iri("https://semopenalex.org/geo/I5"));
  EXPECT_FALSE(is_aux_iri("https://semopenalex.org/work/W1"));
  EXPECT_FALSE(entity_id_of(trusted_iri("https://semopenalex.org/geo/I5")).has_value());
}

TEST(Graph, OnePerKind) {
  EXPECT_EQ(graph_iri(EntityKind::Work).str(), "https://semopenalex.org/graph/works");
  EXPECT_EQ(graph_iri(EntityKind::Concept).str(), "https://semopenalex.org/graph/concepts");
}

TEST(Literal, DatatypesAndLanguage) {
  Literal plain("x");
  EXPECT_EQ(plain.datatype(), vocab::xsd_string());
  auto tagged = Literal::lang_string("hallo", "de");
  EXPECT_EQ(tagged.language(), "de");
  EXPECT_THROW(Literal("x", vocab::rdf_lang_string()), Error);
  EXPECT_THROW(Literal::lang_string("x", ""), Error);
}

TEST(Vocab, ExpandsCuries) {
  EXPECT_EQ(vocab::expand("dcterms:title").str(), "http://purl.org/dc/terms/title");
  EXPECT_EQ(vocab::class_of(EntityKind::Concept).str(), "http://www.w3.org/2004/02/skos/core#Concept");
  EXPECT_EQ(vocab::class_of(EntityKind::Work).str(), "https://semopenalex.org/class/Work");
  EXPECT_THROW(vocab::expand("nope:x"), Error);
}

TEST(Rng, UniformBelowIsPortable) {
  std::mt19937_64 a(3), b(3);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(uniform_below(a, 97), uniform_below(b, 97));
  std::mt19937_64 c(5);
  for (int i = 0; i < 1000; ++i) EXPECT_LT(uniform_below(c, 7), 7u);
  EXPECT_THROW(uniform_below(c, 0), std::exception);
}
