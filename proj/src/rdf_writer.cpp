#include "soa/rdf_writer.hpp"

#include <map>
#include <vector>

#include "soa/vocab.hpp"

namespace soa {

std::string_view extension(RdfFormat format) {
  switch (format) {
    case RdfFormat::NTriples: return "nt";
    case RdfFormat::NQuads: return "nq";
    case RdfFormat::TriG: return "trig";
    case RdfFormat::Turtle: return "ttl";
  }
  return {};
}

std::optional<RdfFormat> parse_format(std::string_view name) {
  if (name == "nt" || name == "ntriples") return RdfFormat::NTriples;
  if (name == "nq" || name == "nquads") return RdfFormat::NQuads;
  if (name == "trig") return RdfFormat::TriG;
  if (name == "ttl" || name == "turtle") return RdfFormat::Turtle;
  return std::nullopt;
}

std::optional<RdfFormat> format_of_path(std::string_view path) {
  if (path.ends_with(".gz")) path.remove_suffix(3);
  auto dot = path.rfind('.');
  if (dot == std::string_view::npos) return std::nullopt;
  return parse_format(path.substr(dot + 1));
}

std::string escape_string(std::string_view lexical) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  out.reserve(lexical.size() + 2);
  for (char ch : lexical) {
    auto c = static_cast<unsigned char>(ch);
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20 || c == 0x7F) {
          out += "\\u00";
          out += kHex[c >> 4];
          out += kHex[c & 0xF];
        } else {
          out += ch;
        }
    }
  }
  return out;
}

namespace {

void append_iri(std::string& out, const Iri& iri) {
  out += '<';
  out += iri.str();
  out += '>';
}

void append_term(std::string& out, const Term& term, bool abbreviate_string) {
  if (const auto* iri = std::get_if<Iri>(&term)) {
    append_iri(out, *iri);
    return;
  }
  const auto& lit = std::get<Literal>(term);
  out += '"';
  out += escape_string(lit.lexical());
  out += '"';
  if (lit.language()) {
    out += '@';
    out += *lit.language();
  } else if (!(abbreviate_string && lit.datatype() == vocab::xsd_string())) {
    out += "^^";
    append_iri(out, lit.datatype());
  }
}

// PN_LOCAL subset that is always safe to write unescaped.
bool safe_local(std::string_view local) {
  if (local.empty()) return false;
  for (char c : local)
    if (!((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '-'))
      return false;
  return local.front() != '-';
}

class TurtleTerms {
 public:
  std::string iri(const Iri& iri) {
    if (const auto* p = vocab::find_prefix(iri.str())) {
      std::string_view local = std::string_view(iri.str()).substr(p->ns.size());
      if (safe_local(local)) {
        used_.emplace(std::string(p->label), std::string(p->ns));
        return std::string(p->label) + ":" + std::string(local);
      }
    }
    std::string out;
    append_iri(out, iri);
    return out;
  }

  std::string term(const Term& t) {
    if (const auto* i = std::get_if<Iri>(&t)) return iri(*i);
    const auto& lit = std::get<Literal>(t);
    std::string out = "\"" + escape_string(lit.lexical()) + "\"";
    if (lit.language()) return out + "@" + *lit.language();
    if (lit.datatype() == vocab::xsd_string()) return out;
    return out + "^^" + iri(lit.datatype());
  }

  std::string predicate(const Iri& p) { return p == vocab::rdf_type() ? "a" : iri(p); }

  std::string prefix_block() const {
    std::string out;
    for (const auto& [label, ns] : used_) out += "@prefix " + label + ": <" + ns + "> .\n";
    if (!out.empty()) out += '\n';
    return out;
  }

 private:
  std::map<std::string, std::string> used_;
};

template <typename Statement>
std::string subject_blocks(std::span<const Statement> statements, TurtleTerms& terms, std::string_view indent) {
  // Group by subject, keeping first-appearance order of subjects and statements.
  std::vector<const Iri*> order;
  std::map<Iri, std::vector<const Statement*>> by_subject;
  for (const auto& s : statements) {
    auto [it, inserted] = by_subject.try_emplace(s.subject);
    if (inserted) order.push_back(&it->first);
    it->second.push_back(&s);
  }
  std::string out;
  for (const Iri* subject : order) {
    const auto& list = by_subject.at(*subject);
    out += indent;
    out += terms.iri(*subject);
    for (std::size_t i = 0; i < list.size(); ++i) {
      out += i == 0 ? " " : std::string(" ;\n") + std::string(indent) + "    ";
      out += terms.predicate(list[i]->predicate);
      out += ' ';
      out += terms.term(list[i]->object);
    }
    out += " .\n";
  }
  return out;
}

}  // namespace

std::string term_to_string(const Term& term, bool abbreviate_string) {
  std::string out;
  append_term(out, term, abbreviate_string);
  return out;
}

std::string serialize_statement(const Quad& q, RdfFormat format) {
  std::string out;
  out.reserve(128);
  append_iri(out, q.subject);
  out += ' ';
  append_iri(out, q.predicate);
  out += ' ';
  append_term(out, q.object, format == RdfFormat::TriG || format == RdfFormat::Turtle);
  if (format == RdfFormat::NQuads) {
    out += ' ';
    append_iri(out, q.graph);
  }
  out += " .";
  return out;
}

std::string write_turtle(std::span<const Triple> triples) {
  TurtleTerms terms;
  std::string body = subject_blocks(triples, terms, "");
  return terms.prefix_block() + body;
}

std::string write_trig(std::span<const Quad> quads) {
  std::vector<const Iri*> order;
  std::map<Iri, std::vector<Quad>> by_graph;
  for (const auto& q : quads) {
    auto [it, inserted] = by_graph.try_emplace(q.graph);
    if (inserted) order.push_back(&it->first);
    it->second.push_back(q);
  }
  TurtleTerms terms;
  std::string body;
  for (const Iri* g : order) {
    body += terms.iri(*g) + " {\n";
    body += subject_blocks(std::span<const Quad>(by_graph.at(*g)), terms, "  ");
    body += "}\n";
  }
  return terms.prefix_block() + body;
}

std::string write_lines(std::span<const Quad> quads, RdfFormat format) {
  std::string out;
  for (const auto& q : quads) {
    out += serialize_statement(q, format);
    out += '\n';
  }
  return out;
}

}  // namespace soa
