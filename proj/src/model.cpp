#include "soa/model.hpp"

#include <cassert>

#include "soa/vocab.hpp"

namespace soa {

namespace {

constexpr std::size_t kMaxDigits = 12;

bool is_alnum(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_alpha(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }

std::string canonical_digits_or_throw(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw Error("MalformedId", "empty numeric part in '" + std::string(whole) + "'");
  if (digits.size() > kMaxDigits)
    throw Error("MalformedId", "more than 12 digits in '" + std::string(whole) + "'");
  for (char c : digits)
    if (!is_digit(c)) throw Error("MalformedId", "non-numeric tail in '" + std::string(whole) + "'");
  if (digits.front() == '0')
    throw Error("MalformedId", "leading zero in '" + std::string(whole) + "'");
  return std::string(digits);
}

}  // namespace

std::string_view segment(EntityKind kind) {
  switch (kind) {
    case EntityKind::Work: return "work";
    case EntityKind::Author: return "author";
    case EntityKind::Source: return "source";
    case EntityKind::Institution: return "institution";
    case EntityKind::Concept: return "concept";
    case EntityKind::Publisher: return "publisher";
  }
  return {};
}

std::string_view plural(EntityKind kind) {
  switch (kind) {
    case EntityKind::Work: return "works";
    case EntityKind::Author: return "authors";
    case EntityKind::Source: return "sources";
    case EntityKind::Institution: return "institutions";
    case EntityKind::Concept: return "concepts";
    case EntityKind::Publisher: return "publishers";
  }
  return {};
}

char prefix_letter(EntityKind kind) {
  switch (kind) {
    case EntityKind::Work: return 'W';
    case EntityKind::Author: return 'A';
    case EntityKind::Source: return 'S';
    case EntityKind::Institution: return 'I';
    case EntityKind::Concept: return 'C';
    case EntityKind::Publisher: return 'P';
  }
  return '?';
}

std::optional<EntityKind> kind_from_prefix(char letter) {
  for (auto k : kAllKinds)
    if (prefix_letter(k) == letter) return k;
  return std::nullopt;
}

std::optional<EntityKind> kind_from_segment(std::string_view s) {
  for (auto k : kAllKinds)
    if (segment(k) == s) return k;
  return std::nullopt;
}

std::optional<EntityKind> kind_from_plural(std::string_view s) {
  for (auto k : kAllKinds)
    if (plural(k) == s) return k;
  return std::nullopt;
}

EntityId::EntityId(EntityKind kind, std::string digits) : kind_(kind) {
  std::string whole = std::string(1, prefix_letter(kind)) + digits;
  digits_ = canonical_digits_or_throw(digits, whole);
}

std::string EntityId::str() const { return std::string(1, prefix_letter(kind_)) + digits_; }

EntityId parse_entity_id(std::string_view text) {
  if (text.empty()) throw Error("MalformedId", "empty id");
  auto kind = kind_from_prefix(text.front());
  if (!kind) throw Error("MalformedId", "unknown prefix letter in '" + std::string(text) + "'");
  return EntityId(*kind, canonical_digits_or_throw(text.substr(1), text));
}

EntityId parse_entity_ref(std::string_view text) {
  static constexpr std::string_view kOpenAlex[] = {"https://openalex.org/", "http://openalex.org/"};
  for (auto prefix : kOpenAlex)
    if (text.starts_with(prefix)) return parse_entity_id(text.substr(prefix.size()));
  return parse_entity_id(text);
}

std::string_view describe(IriProblem problem) {
  switch (problem) {
    case IriProblem::Empty: return "empty";
    case IriProblem::NoScheme: return "no scheme";
    case IriProblem::Space: return "space";
    case IriProblem::ControlCharacter: return "control character";
    case IriProblem::ForbiddenCharacter: return "forbidden character";
  }
  return {};
}

std::optional<IriProblem> check_iri(std::string_view text) {
  if (text.empty()) return IriProblem::Empty;
  for (char ch : text) {
    auto c = static_cast<unsigned char>(ch);
    if (c == ' ') return IriProblem::Space;
    if (c < 0x20 || c == 0x7F) return IriProblem::ControlCharacter;
    switch (c) {
      case '<': case '>': case '"': case '{': case '}':
      case '|': case '^': case '`': case '\\':
        return IriProblem::ForbiddenCharacter;
      default: break;
    }
  }
  // scheme = ALPHA *( ALPHA / DIGIT / "+" / "-" / "." ) ":"
  auto colon = text.find(':');
  if (colon == std::string_view::npos || colon == 0 || !is_alpha(text.front()))
    return IriProblem::NoScheme;
  for (char c : text.substr(0, colon))
    if (!is_alnum(c) && c != '+' && c != '-' && c != '.') return IriProblem::NoScheme;
  return std::nullopt;
}

Iri::Iri(std::string value) : value_(std::move(value)) {
  if (auto problem = check_iri(value_))
    throw Error("InvalidIri", std::string(describe(*problem)) + " in '" + value_ + "'");
}

Iri trusted_iri(std::string value) {
  assert(!check_iri(value));
  return Iri(std::move(value), nullptr);
}

Literal::Literal(std::string lexical) : lexical_(std::move(lexical)), datatype_(vocab::xsd_string()) {}

Literal::Literal(std::string lexical, Iri datatype)
    : lexical_(std::move(lexical)), datatype_(std::move(datatype)) {
  if (datatype_ == vocab::rdf_lang_string())
    throw Error("InvalidLiteral", "rdf:langString requires a language tag");
}

Literal Literal::lang_string(std::string lexical, std::string language) {
  if (language.empty()) throw Error("InvalidLiteral", "empty language tag");
  Literal lit(std::move(lexical));
  lit.datatype_ = vocab::rdf_lang_string();
  lit.language_ = std::move(language);
  return lit;
}

Iri mint_entity_iri(const EntityId& id) {
  std::string s(vocab::kBase);
  s += segment(id.kind());
  s += '/';
  s += id.str();
  return trusted_iri(std::move(s));
}

std::string_view segment(AuxKind kind) {
  switch (kind) {
    case AuxKind::AuthorPosition: return "authorposition";
    case AuxKind::CountsByYear: return "countsbyyear";
    case AuxKind::Geo: return "geo";
  }
  return {};
}

Iri mint_aux_iri(AuxKind kind, std::span<const std::string> parts) {
  if (parts.empty()) throw Error("MalformedPart", "no parts");
  std::string s(vocab::kBase);
  s += segment(kind);
  s += '/';
  for (const auto& part : parts) {
    if (part.empty()) throw Error("MalformedPart", "empty part");
    for (char c : part)
      if (!is_alnum(c)) throw Error("MalformedPart", "'" + part + "' is not alphanumeric");
    s += part;
  }
  return trusted_iri(std::move(s));
}

std::optional<EntityId> entity_id_of(const Iri& iri) {
  std::string_view v = iri.str();
  if (!v.starts_with(vocab::kBase)) return std::nullopt;
  v.remove_prefix(vocab::kBase.size());
  auto slash = v.find('/');
  if (slash == std::string_view::npos) return std::nullopt;
  auto kind = kind_from_segment(v.substr(0, slash));
  if (!kind) return std::nullopt;
  try {
    EntityId id = parse_entity_id(v.substr(slash + 1));
    if (id.kind() != *kind) return std::nullopt;
    return id;
  } catch (const Error&) {
    return std::nullopt;
  }
}

bool is_aux_iri(std::string_view iri) {
  if (!iri.starts_with(vocab::kBase)) return false;
  iri.remove_prefix(vocab::kBase.size());
  for (auto k : {AuxKind::AuthorPosition, AuxKind::CountsByYear, AuxKind::Geo}) {
    auto seg = segment(k);
    if (iri.size() > seg.size() + 1 && iri.starts_with(seg) && iri[seg.size()] == '/') return true;
  }
  return false;
}

Iri graph_iri(EntityKind kind) {
  std::string s(vocab::kBase);
  s += "graph/";
  s += plural(kind);
  return trusted_iri(std::move(s));
}

}  // namespace soa
