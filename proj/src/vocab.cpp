#include "soa/vocab.hpp"

namespace soa::vocab {

Iri term(std::string_view ns, std::string_view local) {
  std::string s(ns);
  s += local;
  return trusted_iri(std::move(s));
}

const Iri& rdf_type() {
  static const Iri iri = term(kRdf, "type");
  return iri;
}

const Iri& xsd_string() {
  static const Iri iri = term(kXsd, "string");
  return iri;
}

const Iri& xsd_integer() {
  static const Iri iri = term(kXsd, "integer");
  return iri;
}

const Iri& rdf_lang_string() {
  static const Iri iri = term(kRdf, "langString");
  return iri;
}

const Iri& class_of(EntityKind kind) {
  static const Iri work = term(kClass, "Work");
  static const Iri author = term(kClass, "Author");
  static const Iri source = term(kClass, "Source");
  static const Iri institution = term(kClass, "Institution");
  static const Iri skos_concept = term(kSkos, "Concept");
  static const Iri publisher = term(kClass, "Publisher");
  switch (kind) {
    case EntityKind::Work: return work;
    case EntityKind::Author: return author;
    case EntityKind::Source: return source;
    case EntityKind::Institution: return institution;
    case EntityKind::Concept: return skos_concept;
    case EntityKind::Publisher: return publisher;
  }
  return work;
}

Iri expand(std::string_view curie) {
  auto colon = curie.find(':');
  if (colon == std::string_view::npos) throw Error("UnknownPrefix", std::string(curie));
  auto label = curie.substr(0, colon);
  for (const auto& p : kPrefixes)
    if (p.label == label) return term(p.ns, curie.substr(colon + 1));
  throw Error("UnknownPrefix", std::string(curie));
}

const Prefix* find_prefix(std::string_view iri) {
  const Prefix* best = nullptr;
  for (const auto& p : kPrefixes)
    if (iri.starts_with(p.ns) && (!best || p.ns.size() > best->ns.size())) best = &p;
  return best;
}

}  // namespace soa::vocab
