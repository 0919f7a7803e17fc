#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "soa/model.hpp"
#include "soa/rdf_writer.hpp"

namespace soa {

// Grammar-level RDF 1.1 reader for N-Triples, N-Quads, Turtle and TriG. It is
// written independently of the serializer and is used to check its output.
// Blank nodes, collections and relative IRIs are reported as errors: none of
// them may appear in this artifact's data.

struct ParsedStatement {
  Iri subject;
  Iri predicate;
  Term object;
  std::optional<Iri> graph;  // nullopt: default graph

  auto operator<=>(const ParsedStatement&) const = default;
};

struct SyntaxError {
  long line;  // 1-based
  std::string message;
};

/// Parses one N-Triples (or, with `quads`, N-Quads) line. Returns nullopt for
/// blank and comment-only lines; throws Error("SyntaxError") otherwise.
std::optional<ParsedStatement> parse_line(std::string_view line, bool quads);

struct ParseResult {
  std::vector<ParsedStatement> statements;
  std::vector<SyntaxError> errors;
};

/// Parses a whole document. With `recover`, a bad statement is recorded and
/// skipped up to the next line ending in '.', otherwise parsing stops at the
/// first error.
ParseResult parse_document(std::string_view text, RdfFormat format, bool recover = true);

using StatementVisitor = std::function<void(ParsedStatement&&)>;
using ErrorVisitor = std::function<void(const SyntaxError&)>;

/// Streams statements of a (possibly gzipped) file, choosing the syntax from
/// its name. Line formats are read incrementally; a statement broken by a raw
/// line feed is reported once, at its first line.
void parse_file(const std::filesystem::path& path, const StatementVisitor& on_statement,
                const ErrorVisitor& on_error);

/// Validates UTF-8 encoding.
bool valid_utf8(std::string_view text);

}  // namespace soa
