#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace soa {

/// Base class for all errors raised by this library. `code()` is a short
/// machine-readable tag (e.g. "MalformedId") used in diagnostics.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

enum class EntityKind : std::uint8_t { Work, Author, Source, Institution, Concept, Publisher };

inline constexpr std::array<EntityKind, 6> kAllKinds = {
    EntityKind::Work,        EntityKind::Author,  EntityKind::Source,
    EntityKind::Institution, EntityKind::Concept, EntityKind::Publisher};

// "work", "author", ...: the IRI path segment.
std::string_view segment(EntityKind kind);
// "works", "authors", ...: the snapshot directory name.
std::string_view plural(EntityKind kind);
char prefix_letter(EntityKind kind);
std::optional<EntityKind> kind_from_prefix(char letter);
std::optional<EntityKind> kind_from_segment(std::string_view segment);
std::optional<EntityKind> kind_from_plural(std::string_view plural);

/// An OpenAlex identifier such as W4239696231. Always canonical: prefix letter
/// agrees with the kind, 1-12 digits, no leading zero.
class EntityId {
 public:
  EntityId(EntityKind kind, std::string digits);

  EntityKind kind() const noexcept { return kind_; }
  const std::string& digits() const noexcept { return digits_; }
  std::string str() const;

  auto operator<=>(const EntityId&) const = default;

 private:
  EntityKind kind_;
  std::string digits_;
};

/// Parses a canonical id ("W123"). Throws Error("MalformedId").
EntityId parse_entity_id(std::string_view text);

/// Accepts either a bare id or an OpenAlex URL ("https://openalex.org/W123").
EntityId parse_entity_ref(std::string_view text);

/// Reason an IRI candidate fails the character-level checks.
enum class IriProblem { Empty, NoScheme, Space, ControlCharacter, ForbiddenCharacter };

std::string_view describe(IriProblem problem);

/// Checks the absolute-IRI invariant without trimming.
std::optional<IriProblem> check_iri(std::string_view text);

class Iri {
 public:
  /// Throws Error("InvalidIri") when `value` fails check_iri.
  explicit Iri(std::string value);

  const std::string& str() const noexcept { return value_; }
  auto operator<=>(const Iri&) const = default;

 private:
  Iri(std::string value, std::nullptr_t) : value_(std::move(value)) {}
  friend Iri trusted_iri(std::string value);
  std::string value_;
};

/// Builds an Iri from a string known to be valid (vocabulary constants,
/// minted identifiers). Checked in debug builds only.
Iri trusted_iri(std::string value);

class Literal {
 public:
  /// xsd:string literal.
  explicit Literal(std::string lexical);
  Literal(std::string lexical, Iri datatype);
  static Literal lang_string(std::string lexical, std::string language);

  const std::string& lexical() const noexcept { return lexical_; }
  const Iri& datatype() const noexcept { return datatype_; }
  const std::optional<std::string>& language() const noexcept { return language_; }

  auto operator<=>(const Literal&) const = default;

 private:
  std::string lexical_;
  Iri datatype_;
  std::optional<std::string> language_;
};

using Term = std::variant<Iri, Literal>;

struct Triple {
  Iri subject;
  Iri predicate;
  Term object;
  auto operator<=>(const Triple&) const = default;
};

struct Quad {
  Iri subject;
  Iri predicate;
  Term object;
  Iri graph;
  auto operator<=>(const Quad&) const = default;

  Triple triple() const { return {subject, predicate, object}; }
};

inline bool is_iri(const Term& t) { return std::holds_alternative<Iri>(t); }

/// https://semopenalex.org/<segment>/<id>
Iri mint_entity_iri(const EntityId& id);

enum class AuxKind { AuthorPosition, CountsByYear, Geo };

std::string_view segment(AuxKind kind);

/// https://semopenalex.org/<kind>/<parts concatenated>. Each part must match
/// [A-Za-z0-9]+; throws Error("MalformedPart") otherwise.
Iri mint_aux_iri(AuxKind kind, std::span<const std::string> parts);

/// Recognizes IRIs minted by mint_entity_iri.
std::optional<EntityId> entity_id_of(const Iri& iri);

/// True for IRIs under one of the auxiliary-node segments.
bool is_aux_iri(std::string_view iri);

/// Named graph holding the statements of one entity kind.
Iri graph_iri(EntityKind kind);

}  // namespace soa
