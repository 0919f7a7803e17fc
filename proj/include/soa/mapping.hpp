#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "soa/ingest.hpp"
#include "soa/model.hpp"
#include "soa/normalize.hpp"

namespace soa {

enum class ObjectKind {
  Literal,    // cleaned literal of `value` type
  Iri,        // external IRI, validated
  EntityRef,  // OpenAlex id minted into an entity IRI
  Abstract,   // inverted index rebuilt into an xsd:string literal
  Aux,        // auxiliary node minted from the owner id (and a part of the element)
};

enum class ValueType { String, Integer, Date, Year, Double, Position };

struct Rule {
  std::string id;
  std::string path;  // dotted; a "[]" suffix expands arrays, e.g. "concepts[].id"
  Iri predicate;
  ObjectKind object = ObjectKind::Literal;
  ValueType value = ValueType::String;
  LiteralContext context = LiteralContext::Other;
  std::optional<EntityKind> ref_kind;  // EntityRef only; nullopt accepts any kind
  int aux = -1;                        // Aux only; index into MappingTable::aux_nodes
  bool required = false;
  bool broader_only = false;  // keep elements whose "level" is one below the record's

  struct Step {
    std::string key;
    bool expand;
  };
  std::vector<Step> steps;  // parsed from `path`
};

struct AuxNodeSpec {
  AuxKind kind;
  Iri type;
  std::string part_path;  // element member supplying the second id part; empty for owner-only ids
  std::vector<Rule> rules;
};

/// Field-to-predicate rules per entity kind. Immutable once built.
struct MappingTable {
  std::map<EntityKind, std::vector<Rule>> rules;
  std::vector<AuxNodeSpec> aux_nodes;

  /// The SemOpenAlex ontology mapping used by the converter.
  static const MappingTable& standard();

  /// Distinct predicates in table order, rdf:type first.
  std::vector<Iri> predicates() const;

  /// Adds a rule to `kind`, parsing its path.
  void add(EntityKind kind, Rule rule);
  void add_aux_rule(int aux, Rule rule);
};

struct Diagnostic {
  std::string rule_id;
  std::string reason;
};

struct MappingOutput {
  std::vector<Quad> quads;  // first quad is the rdf:type assertion
  std::vector<Diagnostic> diagnostics;
};

/// Converts one record into quads in its kind's named graph. Throws
/// Error("RejectedRecord") when the id is missing, malformed, of the wrong
/// kind, or a required rule produces nothing.
MappingOutput map_entity(const RawEntityRecord& record, const MappingTable& table = MappingTable::standard());

/// Ontology document: class and property declarations for `table`.
std::vector<Triple> emit_ontology(const MappingTable& table = MappingTable::standard());

struct VoidConfig {
  std::string dataset = "https://semopenalex.org/void#SemOpenAlex";
  std::string sparql_endpoint = "https://semopenalex.org/sparql";
  std::string data_dump = "https://semopenalex.org/dump";
};

/// VoID dataset description.
std::vector<Triple> emit_void(const std::map<EntityKind, long long>& entity_counts, long long triple_total,
                              const VoidConfig& config = {});

}  // namespace soa
