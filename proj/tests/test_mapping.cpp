#include <gtest/gtest.h>

#include <algorithm>

#include "soa/mapping.hpp"
#include "soa/vocab.hpp"

using namespace soa;
using nlohmann::json;

namespace {

MappingOutput map_json(EntityKind kind, const json& fields) { return map_entity(RawEntityRecord{kind, fields}); }

bool has(const MappingOutput& out, const std::string& s, const std::string& p, const Term& o) {
  return std::any_of(out.quads.begin(), out.quads.end(), [&](const Quad& q) {
    return q.subject.str() == s && q.predicate.str() == p && q.object == o;
  });
}

long count_predicate(const MappingOutput& out, const std::string& p) {
  return std::count_if(out.quads.begin(), out.quads.end(), [&](const Quad& q) { return q.predicate.str() == p; });
}

const std::string W = "https://semopenalex.org/work/W42";

json sample_work() {
  return json::parse(R"({
    "id": "https://openalex.org/W42",
    "display_name": "  Linked\ndata  at scale ",
    "publication_year": 2021,
    "publication_date": "2021-03-04",
    "cited_by_count": 17,
    "ids": {"doi": "https://doi.org/10.1000\\/x1", "pmid": "https://pubmed.ncbi.nlm.nih.gov/1"},
    "abstract_inverted_index": {"graphs": [1], "Knowledge": [0], "scale": [2]},
    "referenced_works": ["https://openalex.org/W1", "https://openalex.org/W2", "https://openalex.org/W1"],
    "concepts": [{"id": "https://openalex.org/C5", "level": 2}],
    "authorships": [
      {"author_position": "first", "author": {"id": "https://openalex.org/A7"},
       "institutions": [{"id": "https://openalex.org/I9"}]}
    ],
    "primary_location": {"source": {"id": "https://openalex.org/S3"}},
    "license": "cc-by",
    "counts_by_year": [{"year": 2022, "cited_by_count": 5}]
  })");
}

}  // namespace

TEST(MapEntity, WorkLiteralsAreCleanedAndTyped) {
  auto out = map_json(EntityKind::Work, sample_work());
  ASSERT_FALSE(out.quads.empty());
  EXPECT_EQ(out.quads.front().predicate, vocab::rdf_type());
  EXPECT_TRUE(has(out, W, "http://purl.org/dc/terms/title", Literal("Linked data at scale")));
  EXPECT_TRUE(has(out, W, "http://purl.org/spar/fabio/hasPublicationYear",
                  Literal("2021", vocab::term(vocab::kXsd, "gYear"))));
  EXPECT_TRUE(has(out, W, "http://purl.org/dc/terms/created", Literal("2021-03-04", vocab::term(vocab::kXsd, "date"))));
  EXPECT_TRUE(has(out, W, "https://semopenalex.org/property/citedByCount", Literal("17", vocab::xsd_integer())));
  EXPECT_TRUE(has(out, W, "http://purl.org/spar/datacite/doi", Literal("https://doi.org/10.1000/x1")));
  EXPECT_TRUE(has(out, W, "http://purl.org/dc/terms/abstract", Literal("Knowledge graphs scale")));
  EXPECT_TRUE(has(out, W, "http://purl.org/dc/terms/license", Literal("cc-by")));
  EXPECT_TRUE(out.diagnostics.empty());
}

TEST(MapEntity, WorkReferencesAndAuxNodes) {
  auto out = map_json(EntityKind::Work, sample_work());
  EXPECT_EQ(count_predicate(out, "http://purl.org/spar/cito/cites"), 2);  // duplicate reference collapses
  EXPECT_TRUE(has(out, W, "https://semopenalex.org/property/hasConcept", trusted_iri("https://semopenalex.org/concept/C5")));
  EXPECT_TRUE(has(out, W, "https://semopenalex.org/property/hasHostSource", trusted_iri("https://semopenalex.org/source/S3")));
  const std::string ap = "https://semopenalex.org/authorposition/W42A7";
  EXPECT_TRUE(has(out, W, "https://semopenalex.org/property/hasAuthorPosition", trusted_iri(ap)));
  EXPECT_TRUE(has(out, ap, vocab::rdf_type().str(), trusted_iri("https://semopenalex.org/class/AuthorPosition")));
  EXPECT_TRUE(has(out, ap, "https://semopenalex.org/property/position", Literal("first")));
  EXPECT_TRUE(has(out, ap, "https://semopenalex.org/property/hasAuthor", trusted_iri("https://semopenalex.org/author/A7")));
  EXPECT_TRUE(has(out, ap, "https://semopenalex.org/property/hasOrganization",
                  trusted_iri("https://semopenalex.org/institution/I9")));
  const std::string cby = "https://semopenalex.org/countsbyyear/W422022";
  EXPECT_TRUE(has(out, cby, "https://semopenalex.org/property/year", Literal("2022", vocab::xsd_integer())));
  // type, title, abstract, created, year, cited, pmid, doi, 2 cites, concept,
  // author position (4 + 1 org), host, license, counts (4)
  EXPECT_EQ(out.quads.size(), 1u + 1 + 1 + 1 + 1 + 1 + 1 + 1 + 2 + 1 + 5 + 1 + 1 + 4);
  for (const auto& q : out.quads) EXPECT_EQ(q.graph.str(), "https://semopenalex.org/graph/works");
}

TEST(MapEntity, EmptyValuesProduceNothing) {
  json w = {{"id", "W1"}, {"display_name", "  \n "}, {"abstract_inverted_index", json::object()}, {"doi", nullptr}};
  auto out = map_json(EntityKind::Work, w);
  EXPECT_EQ(out.quads.size(), 1u);
}

TEST(MapEntity, BadValuesAreDiagnosedNotFatal) {
  json w = {{"id", "W1"}, {"cited_by_count", "many"}, {"publication_date", "2021-02-30"},
            {"authorships", {{{"author_position", "sole"}, {"author", {{"id", "A1"}}}}}},
            {"referenced_works", {"https://openalex.org/A5"}}};
  auto out = map_json(EntityKind::Work, w);
  EXPECT_GE(out.diagnostics.size(), 4u);
  EXPECT_EQ(count_predicate(out, "http://purl.org/spar/cito/cites"), 0);
}

TEST(MapEntity, DuplicatePositionIsReported) {
  json w = {{"id", "W1"}, {"abstract_inverted_index", {{"b", {0}}, {"a", {0}}, {"c", {1}}}}};
  auto out = map_json(EntityKind::Work, w);
  EXPECT_TRUE(has(out, "https://semopenalex.org/work/W1", "http://purl.org/dc/terms/abstract", Literal("a c")));
  ASSERT_EQ(out.diagnostics.size(), 1u);
  EXPECT_NE(out.diagnostics[0].reason.find("DuplicatePosition"), std::string::npos);
}

TEST(MapEntity, RejectsBadIds) {
  EXPECT_THROW(map_json(EntityKind::Work, json{{"display_name", "x"}}), Error);
  EXPECT_THROW(map_json(EntityKind::Work, json{{"id", "A1"}}), Error);
  EXPECT_THROW(map_json(EntityKind::Work, json{{"id", "W01"}}), Error);
}

TEST(MapEntity, ConceptBroaderOnlyFromParentLevel) {
  json c = json::parse(R"({"id": "C10", "display_name": "Semantic Web", "level": 2,
    "ancestors": [{"id": "C1", "level": 1}, {"id": "C2", "level": 0}, {"id": "C3"}],
    "related_concepts": [{"id": "C4"}], "wikidata": "https://www.wikidata.org/wiki/Q54837",
    "description": "branch of computer science"})");
  auto out = map_json(EntityKind::Concept, c);
  const std::string s = "https://semopenalex.org/concept/C10";
  EXPECT_EQ(count_predicate(out, "http://www.w3.org/2004/02/skos/core#broader"), 1);
  EXPECT_TRUE(has(out, s, "http://www.w3.org/2004/02/skos/core#broader", trusted_iri("https://semopenalex.org/concept/C1")));
  EXPECT_TRUE(has(out, s, "http://www.w3.org/2004/02/skos/core#prefLabel", Literal("Semantic Web")));
  EXPECT_TRUE(has(out, s, "http://www.w3.org/2002/07/owl#sameAs", trusted_iri("https://www.wikidata.org/wiki/Q54837")));
  EXPECT_TRUE(has(out, s, vocab::rdf_type().str(), vocab::class_of(EntityKind::Concept)));
}

TEST(MapEntity, InstitutionGeo) {
  json i = json::parse(R"({"id": "I5", "display_name": "KIT", "country_code": "DE", "type": "education",
    "geo": {"city": "Karlsruhe", "country_code": "DE", "latitude": 49, "longitude": 8.4}})");
  auto out = map_json(EntityKind::Institution, i);
  const std::string g = "https://semopenalex.org/geo/I5";
  EXPECT_TRUE(has(out, g, "https://www.geonames.org/ontology#lat", Literal("49.0", vocab::term(vocab::kXsd, "double"))));
  EXPECT_TRUE(has(out, g, "https://www.geonames.org/ontology#long", Literal("8.4", vocab::term(vocab::kXsd, "double"))));
  EXPECT_TRUE(has(out, "https://semopenalex.org/institution/I5", "https://semopenalex.org/property/rorType", Literal("education")));
  EXPECT_EQ(out.quads.size(), 1u + 3 + 6);
}

TEST(MapEntity, ExternalIrisAreValidated) {
  json a = {{"id", "A1"}, {"ids", {{"wikidata", "not an iri"}}}};
  auto out = map_json(EntityKind::Author, a);
  EXPECT_EQ(out.quads.size(), 1u);
  ASSERT_EQ(out.diagnostics.size(), 1u);
  EXPECT_EQ(out.diagnostics[0].rule_id, "author.sameAs");
}

TEST(Ontology, DeclaresEveryPredicateAndClass) {
  auto triples = emit_ontology();
  auto declared = [&](const Iri& s) {
    return std::any_of(triples.begin(), triples.end(), [&](const Triple& t) {
      return t.subject == s && t.predicate == vocab::rdf_type();
    });
  };
  for (const auto& p : MappingTable::standard().predicates()) EXPECT_TRUE(declared(p)) << p.str();
  for (auto kind : kAllKinds) {
    if (kind != EntityKind::Concept) {
      EXPECT_TRUE(declared(vocab::class_of(kind)));
    }
  }
}

TEST(Void, ReportsTotals) {
  std::map<EntityKind, long long> counts{{EntityKind::Work, 3}, {EntityKind::Author, 2}};
  auto triples = emit_void(counts, 99);
  EXPECT_TRUE(std::any_of(triples.begin(), triples.end(), [](const Triple& t) {
    return t.predicate.str() == "http://rdfs.org/ns/void#triples" && t.object == Term(Literal("99", vocab::xsd_integer()));
  }));
  EXPECT_TRUE(std::any_of(triples.begin(), triples.end(), [](const Triple& t) {
    return t.predicate.str() == "http://rdfs.org/ns/void#entities" && t.object == Term(Literal("5", vocab::xsd_integer()));
  }));
}
