#pragma once

#include <array>
#include <string>
#include <string_view>

#include "soa/model.hpp"

namespace soa::vocab {

struct Prefix {
  std::string_view label;  // without trailing colon; "" for the class namespace
  std::string_view ns;
};

// Prefix table of reused ontologies. Immutable.
inline constexpr std::array<Prefix, 19> kPrefixes = {{
    {"", "https://semopenalex.org/class/"},
    {"soa", "https://semopenalex.org/property/"},
    {"oa", "http://openalex.org/"},
    {"xsd", "http://www.w3.org/2001/XMLSchema#"},
    {"owl", "http://www.w3.org/2002/07/owl#"},
    {"rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#"},
    {"rdfs", "http://www.w3.org/2000/01/rdf-schema#"},
    {"dcterms", "http://purl.org/dc/terms/"},
    {"cito", "http://purl.org/spar/cito/"},
    {"fabio", "http://purl.org/spar/fabio/"},
    {"bido", "http://purl.org/spar/bido/"},
    {"datacite", "http://purl.org/spar/datacite/"},
    {"prism", "http://prismstandard.org/namespaces/basic/2.0/"},
    {"dbo", "https://dbpedia.org/ontology/"},
    {"dbp", "https://dbpedia.org/property/"},
    {"foaf", "http://xmlns.com/foaf/0.1/"},
    {"org", "http://www.w3.org/ns/org#"},
    {"gn", "https://www.geonames.org/ontology#"},
    {"skos", "http://www.w3.org/2004/02/skos/core#"},
}};

inline constexpr std::string_view kBase = "https://semopenalex.org/";
inline constexpr std::string_view kClass = "https://semopenalex.org/class/";
inline constexpr std::string_view kSoa = "https://semopenalex.org/property/";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kOwl = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kDcterms = "http://purl.org/dc/terms/";
inline constexpr std::string_view kCito = "http://purl.org/spar/cito/";
inline constexpr std::string_view kFabio = "http://purl.org/spar/fabio/";
inline constexpr std::string_view kDatacite = "http://purl.org/spar/datacite/";
inline constexpr std::string_view kPrism = "http://prismstandard.org/namespaces/basic/2.0/";
inline constexpr std::string_view kDbp = "https://dbpedia.org/property/";
inline constexpr std::string_view kFoaf = "http://xmlns.com/foaf/0.1/";
inline constexpr std::string_view kOrg = "http://www.w3.org/ns/org#";
inline constexpr std::string_view kGn = "https://www.geonames.org/ontology#";
inline constexpr std::string_view kSkos = "http://www.w3.org/2004/02/skos/core#";
// VoID is only used by the dataset description document.
inline constexpr std::string_view kVoid = "http://rdfs.org/ns/void#";

inline constexpr std::string_view kCc0 = "https://creativecommons.org/publicdomain/zero/1.0/";

/// Concatenates a namespace and a local name into a trusted IRI.
Iri term(std::string_view ns, std::string_view local);

// Frequently used terms.
const Iri& rdf_type();
const Iri& xsd_string();
const Iri& xsd_integer();
const Iri& rdf_lang_string();

/// rdf:type object for an entity kind (skos:Concept for concepts).
const Iri& class_of(EntityKind kind);

/// Expands "prefix:local" using kPrefixes. Throws Error("UnknownPrefix").
Iri expand(std::string_view curie);

/// Finds the longest namespace in kPrefixes that `iri` starts with.
const Prefix* find_prefix(std::string_view iri);

}  // namespace soa::vocab
