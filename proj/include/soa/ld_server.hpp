#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "soa/model.hpp"
#include "soa/triple_index.hpp"

namespace soa {

enum class MediaType { Turtle, NTriples, N3, TriG, PlainText };

std::string_view content_type(MediaType type);

/// Picks the representation for an Accept header. Each supported type gets
/// the quality of the most specific range matching it; the highest non-zero
/// quality wins, ties going to the range listed first and then to the order
/// Turtle, N-Triples, N3, TriG. An empty header selects Turtle. PlainText is
/// only considered with `plain_fallback`, for text/html and text/plain.
std::optional<MediaType> negotiate(std::string_view accept, bool plain_fallback = false);

/// Statements of `root` plus, transitively, those of auxiliary nodes reached
/// as objects. Sorted: root first, then by subject, predicate and object.
struct EntityDescription {
  Iri root;
  std::vector<Quad> statements;
};

/// Throws Error("UnknownEntity") when `root` is not a term of the index.
/// Statements without a graph are placed in the root kind's graph.
EntityDescription describe(const TripleIndex& index, const Iri& root);

std::string render(const EntityDescription& description, MediaType type);

struct HttpResponse {
  int status = 200;
  std::string content_type;
  std::string body;
};

struct ServerOptions {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0: any free port
  std::string base_iri = "https://semopenalex.org/";
  bool html_fallback = false;
};

/// Resolves `/<segment>/<id>` against the base IRI. 200 with the negotiated
/// body, 400 for a malformed path or id, 404 for an unknown segment or entity,
/// 406 when nothing acceptable is supported. `/healthz` reports the size.
HttpResponse handle_get(const TripleIndex& index, std::string_view path, std::string_view accept,
                        const ServerOptions& options);

/// HTTP front end over an immutable index. start() binds and serves on a
/// background thread; stop() returns once in-flight requests are done.
class LdServer {
 public:
  LdServer(const TripleIndex& index, ServerOptions options);
  ~LdServer();
  LdServer(const LdServer&) = delete;
  LdServer& operator=(const LdServer&) = delete;

  /// Throws Error("BindFailure").
  void start();
  void stop();
  int port() const noexcept { return port_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  int port_ = 0;
};

}  // namespace soa
