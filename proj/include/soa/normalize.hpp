#pragma once

#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "soa/model.hpp"

namespace soa {

/// token -> positions, as shipped in OpenAlex `abstract_inverted_index`.
using InvertedAbstract = std::map<std::string, std::vector<long long>>;

struct DuplicatePosition {
  long long position;
  std::string kept;
  std::string dropped;
};

struct InvertedText {
  std::string text;
  std::vector<DuplicatePosition> duplicates;
};

/// Rebuilds plain text: tokens ordered by position, joined with single spaces.
/// Missing positions collapse. When two tokens share a position the
/// lexicographically smaller one is kept and the clash is reported.
InvertedText invert_abstract(const InvertedAbstract& index);

enum class LiteralContext { Title, Url, Abstract, Name, Other };

/// Removes C0 controls (except TAB) and DEL, maps CR/LF to a space, drops
/// backslashes in URL context, trims, and collapses runs of spaces.
std::string clean_literal(std::string_view raw, LiteralContext context);

struct RejectedIri {
  IriProblem reason;
};

/// Trims `raw` and checks it against the IRI invariant.
std::variant<Iri, RejectedIri> validate_iri_candidate(std::string_view raw);

}  // namespace soa
