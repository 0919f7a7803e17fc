#include "soa/rdf_parser.hpp"

#include <map>

#include "soa/gzip_io.hpp"

namespace soa {

namespace {

constexpr std::string_view kXsdNs = "http://www.w3.org/2001/XMLSchema#";
constexpr std::string_view kRdfNs = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";

struct Failure {
  std::size_t pos;
  std::string message;
};

bool is_alpha(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_hex(char c) { return is_digit(c) || (c >= 'A' && c <= 'F') || (c >= 'a' && c <= 'f'); }
bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

// PN_CHARS_BASE approximated as ASCII letters plus any non-ASCII byte.
bool pn_chars_base(char c) { return is_alpha(c) || static_cast<unsigned char>(c) >= 0x80; }
bool pn_chars_u(char c) { return pn_chars_base(c) || c == '_'; }
bool pn_chars(char c) { return pn_chars_u(c) || c == '-' || is_digit(c); }

class Cursor {
 public:
  Cursor(std::string_view text, bool turtle) : text_(text), turtle_(turtle) {}

  std::size_t pos = 0;
  std::map<std::string, std::string> prefixes;

  bool eof() const { return pos >= text_.size(); }
  char peek(std::size_t ahead = 0) const { return pos + ahead < text_.size() ? text_[pos + ahead] : '\0'; }
  std::string_view text() const { return text_; }

  [[noreturn]] void fail(std::string message) const { throw Failure{pos, std::move(message)}; }

  // Skips whitespace and comments. N-Triples callers never see newlines.
  void skip() {
    while (!eof()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        ++pos;
      } else if (c == '#') {
        while (!eof() && peek() != '\n') ++pos;
      } else {
        break;
      }
    }
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }

  bool accept_keyword(std::string_view kw, bool case_insensitive) {
    if (pos + kw.size() > text_.size()) return false;
    for (std::size_t i = 0; i < kw.size(); ++i) {
      char a = text_[pos + i], b = kw[i];
      if (case_insensitive) {
        a = static_cast<char>(a | 0x20);
        b = static_cast<char>(b | 0x20);
      }
      if (a != b) return false;
    }
    char after = pos + kw.size() < text_.size() ? text_[pos + kw.size()] : ' ';
    if (pn_chars(after) || after == ':') return false;
    pos += kw.size();
    return true;
  }

  char32_t read_uchar() {
    // at 'u' or 'U'
    int n = peek() == 'u' ? 4 : 8;
    ++pos;
    char32_t cp = 0;
    for (int i = 0; i < n; ++i) {
      char c = peek();
      if (!is_hex(c)) fail("bad \\u escape");
      cp = cp * 16 + static_cast<char32_t>(is_digit(c) ? c - '0' : (c | 0x20) - 'a' + 10);
      ++pos;
    }
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) fail("escape is not a Unicode scalar value");
    return cp;
  }

  Iri iriref() {
    expect('<');
    std::string value;
    while (true) {
      if (eof()) fail("unterminated IRI");
      char c = peek();
      auto u = static_cast<unsigned char>(c);
      if (c == '>') {
        ++pos;
        break;
      }
      if (c == '\\') {
        ++pos;
        if (peek() != 'u' && peek() != 'U') fail("only \\u escapes are allowed in IRIs");
        append_utf8(value, read_uchar());
        continue;
      }
      if (u <= 0x20 || c == '<' || c == '"' || c == '{' || c == '}' || c == '|' || c == '^' || c == '`')
        fail("character not allowed in IRI");
      value += c;
      ++pos;
    }
    return make_iri(std::move(value));
  }

  Iri make_iri(std::string value) {
    // Absolute IRI: scheme ":" ...
    std::size_t colon = value.find(':');
    bool scheme_ok = colon != std::string::npos && colon > 0 && is_alpha(value[0]);
    for (std::size_t i = 1; scheme_ok && i < colon; ++i) {
      char c = value[i];
      scheme_ok = is_alpha(c) || is_digit(c) || c == '+' || c == '-' || c == '.';
    }
    if (!scheme_ok) fail("relative IRI <" + value + ">");
    try {
      return Iri(std::move(value));
    } catch (const Error& e) {
      fail(e.what());
    }
  }

  std::string string_body() {
    char q = peek();
    bool long_form = turtle_ && peek(1) == q && peek(2) == q;
    if (!turtle_ && q != '"') fail("expected string literal");
    pos += long_form ? 3 : 1;
    std::string value;
    while (true) {
      if (eof()) fail("unterminated string");
      char c = peek();
      if (long_form) {
        if (c == q && peek(1) == q && peek(2) == q) {
          // """a""""  : the closing delimiter is the last three quotes.
          while (peek(3) == q) {
            value += q;
            ++pos;
          }
          pos += 3;
          break;
        }
      } else {
        if (c == q) {
          ++pos;
          break;
        }
        if (c == '\n' || c == '\r') fail("raw line break in string literal");
      }
      if (c == '\\') {
        ++pos;
        char e = peek();
        switch (e) {
          case 't': value += '\t'; break;
          case 'b': value += '\b'; break;
          case 'n': value += '\n'; break;
          case 'r': value += '\r'; break;
          case 'f': value += '\f'; break;
          case '"': value += '"'; break;
          case '\'': value += '\''; break;
          case '\\': value += '\\'; break;
          case 'u':
          case 'U':
            append_utf8(value, read_uchar());
            continue;
          default: fail("bad string escape");
        }
        ++pos;
        continue;
      }
      value += c;
      ++pos;
    }
    return value;
  }

  std::string langtag() {
    expect('@');
    std::size_t start = pos;
    if (!is_alpha(peek())) fail("bad language tag");
    while (is_alpha(peek())) ++pos;
    while (peek() == '-') {
      ++pos;
      if (!is_alpha(peek()) && !is_digit(peek())) fail("bad language tag");
      while (is_alpha(peek()) || is_digit(peek())) ++pos;
    }
    return std::string(text_.substr(start, pos - start));
  }

  Literal literal() {
    std::string lexical = string_body();
    if (peek() == '@') return Literal::lang_string(std::move(lexical), langtag());
    if (peek() == '^' && peek(1) == '^') {
      pos += 2;
      Iri dt = turtle_ ? iri() : iriref();
      if (dt.str() == std::string(kRdfNs) + "langString") fail("rdf:langString without language tag");
      return Literal(std::move(lexical), std::move(dt));
    }
    return Literal(std::move(lexical));
  }

  // Turtle: IRIREF or prefixed name.
  Iri iri() {
    if (peek() == '<') return iriref();
    return prefixed_name();
  }

  Iri prefixed_name() {
    std::size_t start = pos;
    if (pn_chars_base(peek())) {
      ++pos;
      while (pn_chars(peek()) || (peek() == '.' && pn_chars(peek(1)))) ++pos;
    }
    if (peek() != ':') {
      pos = start;
      fail("expected IRI");
    }
    std::string label(text_.substr(start, pos - start));
    ++pos;
    std::string local;
    auto local_char = [&](bool first) -> bool {
      char c = peek();
      if (pn_chars_u(c) || c == ':' || is_digit(c)) return true;
      if (!first && (c == '-' )) return true;
      return false;
    };
    bool first = true;
    while (true) {
      char c = peek();
      if (c == '%') {
        if (!is_hex(peek(1)) || !is_hex(peek(2))) fail("bad percent escape");
        local.append(text_.substr(pos, 3));
        pos += 3;
      } else if (c == '\\') {
        char e = peek(1);
        static constexpr std::string_view kEsc = "_~.-!$&'()*+,;=/?#@%";
        if (kEsc.find(e) == std::string_view::npos) fail("bad local name escape");
        local += e;
        pos += 2;
      } else if (local_char(first)) {
        local += c;
        ++pos;
      } else if (!first && c == '.' && (pn_chars(peek(1)) || peek(1) == ':' || peek(1) == '%' || peek(1) == '\\')) {
        local += c;
        ++pos;
      } else {
        break;
      }
      first = false;
    }
    auto it = prefixes.find(label);
    if (it == prefixes.end()) fail("undeclared prefix '" + label + ":'");
    return make_iri(it->second + local);
  }

  Term turtle_object() {
    char c = peek();
    if (c == '"' || c == '\'') return literal();
    if (c == '_' && peek(1) == ':') fail("blank nodes are not supported");
    if (c == '[') fail("blank nodes are not supported");
    if (c == '(') fail("collections are not supported");
    if (is_digit(c) || ((c == '+' || c == '-' || c == '.') && (is_digit(peek(1)) || peek(1) == '.')))
      return numeric();
    if (accept_keyword("true", false)) return Literal("true", Iri(std::string(kXsdNs) + "boolean"));
    if (accept_keyword("false", false)) return Literal("false", Iri(std::string(kXsdNs) + "boolean"));
    return iri();
  }

  Literal numeric() {
    std::size_t start = pos;
    if (peek() == '+' || peek() == '-') ++pos;
    std::size_t int_digits = 0, frac_digits = 0;
    while (is_digit(peek())) ++pos, ++int_digits;
    bool dot = false, exp = false;
    if (peek() == '.' && is_digit(peek(1))) {
      dot = true;
      ++pos;
      while (is_digit(peek())) ++pos, ++frac_digits;
    }
    if ((peek() == 'e' || peek() == 'E') && (int_digits + frac_digits) > 0) {
      exp = true;
      ++pos;
      if (peek() == '+' || peek() == '-') ++pos;
      if (!is_digit(peek())) fail("bad exponent");
      while (is_digit(peek())) ++pos;
    }
    if (int_digits + frac_digits == 0) fail("bad number");
    std::string lex(text_.substr(start, pos - start));
    std::string dt = exp ? "double" : dot ? "decimal" : "integer";
    return Literal(std::move(lex), Iri(std::string(kXsdNs) + dt));
  }

 private:
  std::string_view text_;
  bool turtle_;
};

long line_of(std::string_view text, std::size_t pos) {
  long line = 1;
  for (std::size_t i = 0; i < pos && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

void nt_subject_check(Cursor& c) {
  if (c.peek() == '_' && c.peek(1) == ':') c.fail("blank nodes are not supported");
}

ParsedStatement nt_statement(Cursor& c, bool quads) {
  nt_subject_check(c);
  Iri s = c.iriref();
  c.skip();
  Iri p = c.iriref();
  c.skip();
  nt_subject_check(c);
  Term o = c.peek() == '"' ? Term(c.literal()) : Term(c.iriref());
  c.skip();
  std::optional<Iri> g;
  if (quads && c.peek() == '<') {
    g = c.iriref();
    c.skip();
  }
  c.expect('.');
  c.skip();
  if (!c.eof()) c.fail("trailing characters after '.'");
  return {std::move(s), std::move(p), std::move(o), std::move(g)};
}

class DocumentParser {
 public:
  DocumentParser(std::string_view text, bool trig, bool recover)
      : c_(text, true), text_(text), trig_(trig), recover_(recover) {}

  ParseResult run() {
    if (!valid_utf8(text_)) {
      result_.errors.push_back({1, "invalid UTF-8"});
      return std::move(result_);
    }
    while (true) {
      c_.skip();
      if (c_.eof()) break;
      std::size_t start = c_.pos;
      try {
        top_level();
      } catch (const Failure& f) {
        if (!record(f, start)) break;
        if (in_block_) block_body();
      }
    }
    return std::move(result_);
  }

 private:
  bool record(const Failure& f, std::size_t start) {
    result_.errors.push_back({line_of(text_, std::max(f.pos, start)), f.message});
    if (!recover_) {
      c_.pos = text_.size();
      return false;
    }
    resync(f.pos);
    return true;
  }

  // Moves past the next line whose last non-blank character is '.', or stops
  // in front of a line that closes a graph block.
  void resync(std::size_t from) {
    std::size_t pos = from;
    while (pos < text_.size()) {
      std::size_t nl = text_.find('\n', pos);
      std::size_t end = nl == std::string_view::npos ? text_.size() : nl;
      std::string_view line = text_.substr(pos, end - pos);
      while (!line.empty() && is_ws(line.back())) line.remove_suffix(1);
      if (!line.empty() && line.back() == '.') {
        c_.pos = nl == std::string_view::npos ? text_.size() : nl + 1;
        return;
      }
      std::size_t next = nl == std::string_view::npos ? text_.size() : nl + 1;
      std::string_view following = text_.substr(next);
      std::size_t k = following.find_first_not_of(" \t\r");
      if (in_block_ && k != std::string_view::npos && following[k] == '}') {
        c_.pos = next + k;
        return;
      }
      pos = next;
    }
    c_.pos = text_.size();
  }

  void emit(const Iri& s, const Iri& p, Term o) {
    result_.statements.push_back({s, p, std::move(o), graph_});
  }

  bool directive() {
    if (c_.peek() == '@') {
      if (c_.accept_keyword("@prefix", false)) {
        prefix_decl();
        c_.skip();
        c_.expect('.');
        return true;
      }
      if (c_.accept_keyword("@base", false)) c_.fail("@base is not supported");
      c_.fail("unknown directive");
    }
    if (c_.accept_keyword("PREFIX", true)) {
      prefix_decl();
      return true;
    }
    if (c_.accept_keyword("BASE", true)) c_.fail("BASE is not supported");
    return false;
  }

  void prefix_decl() {
    c_.skip();
    std::size_t start = c_.pos;
    if (pn_chars_base(c_.peek())) {
      ++c_.pos;
      while (pn_chars(c_.peek()) || (c_.peek() == '.' && pn_chars(c_.peek(1)))) ++c_.pos;
    }
    if (c_.peek() != ':') c_.fail("expected prefix name");
    std::string label(text_.substr(start, c_.pos - start));
    ++c_.pos;
    c_.skip();
    Iri ns = c_.iriref();
    c_.prefixes[label] = ns.str();
  }

  void top_level() {
    if (directive()) return;
    if (trig_) {
      if (c_.accept_keyword("GRAPH", true)) {
        c_.skip();
        Iri g = c_.iri();
        c_.skip();
        wrapped_graph(std::move(g));
        return;
      }
      if (c_.peek() == '{') {
        wrapped_graph(std::nullopt);
        return;
      }
      if (c_.peek() == '_' || c_.peek() == '[') c_.fail("blank nodes are not supported");
      Iri label = c_.iri();
      c_.skip();
      if (c_.peek() == '{') {
        wrapped_graph(std::move(label));
        return;
      }
      graph_ = std::nullopt;
      predicate_object_list(label);
      c_.skip();
      c_.expect('.');
      return;
    }
    triples();
    c_.skip();
    c_.expect('.');
  }

  void wrapped_graph(std::optional<Iri> g) {
    c_.expect('{');
    graph_ = std::move(g);
    in_block_ = true;
    block_body();
  }

  // Inside '{' ... '}'; the final triple may omit its '.'.
  void block_body() {
    while (true) {
      c_.skip();
      if (c_.eof()) {
        result_.errors.push_back({line_of(text_, c_.pos), "unterminated graph block"});
        in_block_ = false;
        return;
      }
      if (c_.peek() == '}') {
        ++c_.pos;
        in_block_ = false;
        graph_ = std::nullopt;
        return;
      }
      std::size_t start = c_.pos;
      try {
        triples();
        c_.skip();
        if (c_.peek() == '.') {
          ++c_.pos;
        } else if (c_.peek() != '}') {
          c_.fail("expected '.' or '}'");
        }
      } catch (const Failure& f) {
        if (!record(f, start)) {
          in_block_ = false;
          return;
        }
      }
    }
  }

  void triples() {
    if (c_.peek() == '_' || c_.peek() == '[') c_.fail("blank nodes are not supported");
    if (c_.peek() == '(') c_.fail("collections are not supported");
    Iri s = c_.iri();
    c_.skip();
    predicate_object_list(s);
  }

  void predicate_object_list(const Iri& s) {
    while (true) {
      Iri p = verb();
      c_.skip();
      while (true) {
        emit(s, p, c_.turtle_object());
        c_.skip();
        if (c_.peek() != ',') break;
        ++c_.pos;
        c_.skip();
      }
      if (c_.peek() != ';') return;
      while (c_.peek() == ';') {
        ++c_.pos;
        c_.skip();
      }
      char n = c_.peek();
      if (n == '.' || n == '}' || n == ']' || c_.eof()) return;
    }
  }

  Iri verb() {
    if (c_.peek() == 'a') {
      char after = c_.peek(1);
      if (is_ws(after) || after == '<' || after == '"') {
        ++c_.pos;
        return Iri(std::string(kRdfNs) + "type");
      }
    }
    return c_.iri();
  }

  Cursor c_;
  std::string_view text_;
  bool trig_;
  bool recover_;
  bool in_block_ = false;
  std::optional<Iri> graph_;
  ParseResult result_;
};

}  // namespace

bool valid_utf8(std::string_view text) {
  std::size_t i = 0, n = text.size();
  while (i < n) {
    auto c = static_cast<unsigned char>(text[i]);
    if (c < 0x80) {
      ++i;
      continue;
    }
    int len;
    char32_t cp;
    if ((c & 0xE0) == 0xC0) len = 2, cp = c & 0x1F;
    else if ((c & 0xF0) == 0xE0) len = 3, cp = c & 0x0F;
    else if ((c & 0xF8) == 0xF0) len = 4, cp = c & 0x07;
    else return false;
    if (i + len > n) return false;
    for (int k = 1; k < len; ++k) {
      auto cc = static_cast<unsigned char>(text[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    static constexpr char32_t kMin[] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return false;
    i += len;
  }
  return true;
}

std::optional<ParsedStatement> parse_line(std::string_view line, bool quads) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  if (!valid_utf8(line)) throw Error("SyntaxError", "invalid UTF-8");
  Cursor c(line, false);
  try {
    c.skip();
    if (c.eof()) return std::nullopt;
    return nt_statement(c, quads);
  } catch (const Failure& f) {
    throw Error("SyntaxError", f.message + " at column " + std::to_string(f.pos + 1));
  }
}

ParseResult parse_document(std::string_view text, RdfFormat format, bool recover) {
  if (format == RdfFormat::NTriples || format == RdfFormat::NQuads) {
    ParseResult result;
    long line_no = 0;
    std::size_t pos = 0;
    bool skipping = false;
    while (pos < text.size()) {
      std::size_t nl = text.find('\n', pos);
      std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
      pos = nl == std::string_view::npos ? text.size() : nl + 1;
      ++line_no;
      if (skipping) {
        // Continuation of a statement already reported as broken.
        std::string_view t = line;
        while (!t.empty() && is_ws(t.back())) t.remove_suffix(1);
        skipping = t.empty() || t.back() != '.';
        continue;
      }
      try {
        if (auto st = parse_line(line, format == RdfFormat::NQuads)) result.statements.push_back(std::move(*st));
      } catch (const Error& e) {
        result.errors.push_back({line_no, e.what()});
        if (!recover) break;
        std::string_view t = line;
        while (!t.empty() && is_ws(t.back())) t.remove_suffix(1);
        skipping = t.empty() || t.back() != '.';
      }
    }
    return result;
  }
  return DocumentParser(text, format == RdfFormat::TriG, recover).run();
}

void parse_file(const std::filesystem::path& path, const StatementVisitor& on_statement, const ErrorVisitor& on_error) {
  auto format = format_of_path(path.string());
  if (!format) throw Error("ParseFailure", "unknown RDF file type: " + path.string());
  if (*format == RdfFormat::NTriples || *format == RdfFormat::NQuads) {
    LineReader reader(path, /*allow_plain=*/path.extension() != ".gz");
    std::string line;
    long line_no = 0;
    bool skipping = false;
    auto ends_statement = [](std::string_view t) {
      while (!t.empty() && is_ws(t.back())) t.remove_suffix(1);
      return !t.empty() && t.back() == '.';
    };
    while (reader.next(line)) {
      ++line_no;
      if (skipping) {
        skipping = !ends_statement(line);
        continue;
      }
      try {
        if (auto st = parse_line(line, *format == RdfFormat::NQuads)) on_statement(std::move(*st));
      } catch (const Error& e) {
        on_error({line_no, e.what()});
        skipping = !ends_statement(line);
      }
    }
    return;
  }
  std::string text = read_file(path);
  auto result = parse_document(text, *format, true);
  for (auto& st : result.statements) on_statement(std::move(st));
  for (const auto& e : result.errors) on_error(e);
}

}  // namespace soa
