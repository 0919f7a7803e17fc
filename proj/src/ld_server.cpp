#include "soa/ld_server.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <deque>
#include <set>

#include "httplib.h"
#include "soa/log.hpp"
#include "soa/rdf_writer.hpp"
#include "soa/vocab.hpp"

namespace soa {

std::string_view content_type(MediaType type) {
  switch (type) {
    case MediaType::Turtle: return "text/turtle";
    case MediaType::NTriples: return "application/n-triples";
    case MediaType::N3: return "text/n3";
    case MediaType::TriG: return "application/trig";
    case MediaType::PlainText: return "text/plain";
  }
  return "text/turtle";
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return out;
}

struct AcceptRange {
  std::string type, subtype;
  double q = 1.0;
  std::size_t position = 0;
};

std::vector<AcceptRange> parse_accept(std::string_view header) {
  std::vector<AcceptRange> out;
  std::size_t position = 0;
  while (!header.empty()) {
    auto comma = header.find(',');
    auto item = trim(header.substr(0, comma));
    header = comma == std::string_view::npos ? std::string_view{} : header.substr(comma + 1);
    if (item.empty()) continue;
    auto semi = item.find(';');
    auto range = lower(trim(item.substr(0, semi)));
    auto slash = range.find('/');
    if (slash == std::string::npos) continue;
    AcceptRange r{range.substr(0, slash), range.substr(slash + 1), 1.0, position++};
    bool valid = true;
    while (semi != std::string_view::npos) {
      item = item.substr(semi + 1);
      semi = item.find(';');
      auto param = trim(item.substr(0, semi));
      if (param.size() >= 2 && (param[0] == 'q' || param[0] == 'Q') && param[1] == '=') {
        auto v = param.substr(2);
        double q = 0;
        auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), q);
        if (ec != std::errc{} || ptr != v.data() + v.size() || q < 0 || q > 1) valid = false;
        r.q = q;
      }
    }
    if (valid) out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

std::optional<MediaType> negotiate(std::string_view accept, bool plain_fallback) {
  if (trim(accept).empty()) return MediaType::Turtle;
  struct Candidate {
    MediaType type;
    std::string_view full;
  };
  std::vector<Candidate> candidates = {{MediaType::Turtle, "text/turtle"},
                                       {MediaType::NTriples, "application/n-triples"},
                                       {MediaType::N3, "text/n3"},
                                       {MediaType::TriG, "application/trig"}};
  if (plain_fallback) {
    candidates.push_back({MediaType::PlainText, "text/html"});
    candidates.push_back({MediaType::PlainText, "text/plain"});
  }
  auto ranges = parse_accept(accept);

  std::optional<MediaType> best;
  double best_q = 0;
  std::size_t best_pos = 0;
  for (const auto& cand : candidates) {
    auto slash = cand.full.find('/');
    auto type = cand.full.substr(0, slash);
    auto sub = cand.full.substr(slash + 1);
    int specificity = -1;
    const AcceptRange* chosen = nullptr;
    for (const auto& r : ranges) {
      int s = -1;
      if (r.type == type && r.subtype == sub) s = 2;
      else if (r.type == type && r.subtype == "*") s = 1;
      else if (r.type == "*" && r.subtype == "*") s = 0;
      if (s > specificity) {
        specificity = s;
        chosen = &r;
      }
    }
    // The fallback listing is never chosen through a wildcard.
    if (!chosen || chosen->q <= 0) continue;
    if (cand.type == MediaType::PlainText && specificity < 2) continue;
    if (!best || chosen->q > best_q || (chosen->q == best_q && chosen->position < best_pos)) {
      best = cand.type;
      best_q = chosen->q;
      best_pos = chosen->position;
    }
  }
  return best;
}

EntityDescription describe(const TripleIndex& index, const Iri& root) {
  auto root_id = index.id_of(root);
  if (!root_id) throw Error("UnknownEntity", root.str());

  Iri fallback_graph = trusted_iri(std::string(vocab::kBase) + "graph/default");
  if (auto id = entity_id_of(root)) fallback_graph = graph_iri(id->kind());

  EntityDescription out{root, {}};
  auto all = index.statements();
  std::set<TermId> visited{*root_id};
  std::deque<TermId> queue{*root_id};
  while (!queue.empty()) {
    TermId s = queue.front();
    queue.pop_front();
    index.scan(s, std::nullopt, std::nullopt, [&](const IdTriple& t) {
      auto pos = static_cast<std::size_t>(std::lower_bound(all.begin(), all.end(), t) - all.begin());
      auto g = index.graph_of(pos);
      auto triple = index.triple(t);
      out.statements.push_back(Quad{triple.subject, triple.predicate, triple.object,
                                    g ? std::get<Iri>(index.term(*g)) : fallback_graph});
      if (const auto* o = std::get_if<Iri>(&triple.object); o && is_aux_iri(o->str()) && visited.insert(t.o).second)
        queue.push_back(t.o);
    });
  }
  std::sort(out.statements.begin(), out.statements.end(), [&](const Quad& a, const Quad& b) {
    bool ar = a.subject == root, br = b.subject == root;
    if (ar != br) return ar;
    if (a.subject != b.subject) return a.subject < b.subject;
    if (a.predicate != b.predicate) return a.predicate < b.predicate;
    return a.object < b.object;
  });
  return out;
}

std::string render(const EntityDescription& description, MediaType type) {
  switch (type) {
    case MediaType::Turtle:
    case MediaType::N3: {
      std::vector<Triple> triples;
      triples.reserve(description.statements.size());
      for (const auto& q : description.statements) triples.push_back(q.triple());
      return write_turtle(triples);
    }
    case MediaType::TriG: return write_trig(description.statements);
    case MediaType::NTriples:
    case MediaType::PlainText: return write_lines(description.statements, RdfFormat::NTriples);
  }
  return {};
}

namespace {

HttpResponse plain(int status, std::string message) {
  return HttpResponse{status, "text/plain; charset=utf-8", std::move(message) + "\n"};
}

bool alnum(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)); });
}

}  // namespace

HttpResponse handle_get(const TripleIndex& index, std::string_view path, std::string_view accept,
                        const ServerOptions& options) {
  if (auto q = path.find_first_of("?#"); q != std::string_view::npos) path = path.substr(0, q);
  if (path == "/healthz")
    return HttpResponse{200, "application/json", "{\"status\":\"ok\",\"statements\":" + std::to_string(index.size()) + "}\n"};
  if (path.empty() || path.front() != '/') return plain(400, "malformed path");
  auto rest = path.substr(1);
  auto slash = rest.find('/');
  if (slash == std::string_view::npos) return plain(400, "malformed path");
  auto seg = rest.substr(0, slash);
  auto local = rest.substr(slash + 1);
  if (seg.empty() || !alnum(local)) return plain(400, "malformed path");

  bool aux = seg == segment(AuxKind::AuthorPosition) || seg == segment(AuxKind::CountsByYear) ||
             seg == segment(AuxKind::Geo);
  if (!aux) {
    auto kind = kind_from_segment(seg);
    if (!kind) return plain(404, "unknown resource type");
    try {
      if (parse_entity_id(local).kind() != *kind) return plain(400, "identifier does not match its type");
    } catch (const Error&) {
      return plain(400, "malformed identifier");
    }
  }

  auto type = negotiate(accept, options.html_fallback);
  if (!type) return plain(406, "supported types: text/turtle, application/n-triples, text/n3, application/trig");

  auto iri_text = options.base_iri + std::string(rest);
  if (check_iri(iri_text)) return plain(400, "malformed path");
  if (!index.id_of(trusted_iri(iri_text))) return plain(404, "not found");
  auto description = describe(index, trusted_iri(iri_text));
  std::string ctype(content_type(*type));
  ctype += "; charset=utf-8";
  return HttpResponse{200, std::move(ctype), render(description, *type)};
}

struct LdServer::Impl {
  const TripleIndex& index;
  ServerOptions options;
  httplib::Server server;
  std::thread thread;
};

LdServer::LdServer(const TripleIndex& index, ServerOptions options)
    : impl_(new Impl{index, std::move(options), {}, {}}) {
  Impl* impl = impl_.get();
  // SO_REUSEADDR only: the library default SO_REUSEPORT would let a second
  // server share a port that is already in use.
  impl->server.set_socket_options([](socket_t sock) {
    int yes = 1;
    ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });
  impl->server.set_tcp_nodelay(true);
  impl->server.Get(".*", [impl](const httplib::Request& req, httplib::Response& res) {
    auto accept = req.get_header_value("Accept");
    auto r = handle_get(impl->index, req.path, accept, impl->options);
    res.status = r.status;
    res.set_content(r.body, r.content_type);
    log::debug("request", {{"path", req.path}, {"status", r.status}});
  });
}

LdServer::~LdServer() { stop(); }

void LdServer::start() {
  auto& s = impl_->server;
  if (impl_->options.port == 0) {
    port_ = s.bind_to_any_port(impl_->options.host);
    if (port_ <= 0) throw Error("BindFailure", impl_->options.host);
  } else {
    if (!s.bind_to_port(impl_->options.host, impl_->options.port))
      throw Error("BindFailure", impl_->options.host + ":" + std::to_string(impl_->options.port));
    port_ = impl_->options.port;
  }
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

void LdServer::stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace soa
