#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "soa/model.hpp"

namespace soa {

enum class RdfFormat { NTriples, NQuads, TriG, Turtle };

std::string_view extension(RdfFormat format);  // "nt", "nq", "trig", "ttl"
std::optional<RdfFormat> parse_format(std::string_view name);
/// Format implied by a file name (".nt", ".nq", ".trig", ".ttl", optionally + ".gz").
std::optional<RdfFormat> format_of_path(std::string_view path);

/// N-Triples string escaping: \" \\ \n \r \t, \uXXXX for other controls.
std::string escape_string(std::string_view lexical);

/// `<iri>` or a quoted literal with its language tag or datatype. xsd:string
/// is written explicitly unless `abbreviate_string` is set.
std::string term_to_string(const Term& term, bool abbreviate_string = false);

/// One statement. N-Triples and N-Quads produce a complete line (no LF);
/// TriG produces the triple member written inside the graph block.
std::string serialize_statement(const Quad& quad, RdfFormat format);

/// Turtle document with @prefix lines and one subject block per subject, in
/// first-appearance order.
std::string write_turtle(std::span<const Triple> triples);

/// TriG document grouping statements by graph, in first-appearance order.
std::string write_trig(std::span<const Quad> quads);

/// N-Triples / N-Quads document, one statement per line.
std::string write_lines(std::span<const Quad> quads, RdfFormat format);

}  // namespace soa
