#include "soa/parts.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

namespace fs = std::filesystem;

namespace soa {

TripleBuffer::TripleBuffer(std::size_t capacity, Sink sink) : capacity_(capacity), sink_(std::move(sink)) {
  if (capacity_ == 0) throw Error("InvalidConfig", "buffer capacity must be positive");
  quads_.reserve(capacity_);
}

void TripleBuffer::push(Quad quad) {
  quads_.push_back(std::move(quad));
  if (quads_.size() >= capacity_) flush();
}

void TripleBuffer::flush() {
  if (quads_.empty()) return;
  sink_(quads_);
  ++flushes_;
  quads_.clear();
}

struct PartWriter::State {
  fs::path dir;
  std::string kind;
  int worker;
  PartOptions options;
  std::unique_ptr<TripleBuffer> buffer;
  std::unique_ptr<ByteSink> sink;
  OutputPart current;
  std::optional<Iri> open_graph;
  std::vector<OutputPart> done;
  int next_sequence = 0;

  fs::path current_path() const { return dir / current.file; }

  void open() {
    current = OutputPart{};
    current.kind = kind;
    current.worker = worker;
    current.sequence = next_sequence++;
    current.format = options.format;
    current.compressed = options.gzip;
    current.file = kind + "_part_" + std::to_string(worker) + "_" + std::to_string(current.sequence) + "." +
                   std::string(extension(options.format)) + (options.gzip ? ".gz" : "");
    sink = std::make_unique<ByteSink>(current_path(), options.gzip);
    open_graph.reset();
  }

  void close_file() {
    if (!sink) return;
    if (open_graph) sink->write("}\n");
    sink->close();
    current.bytes = sink->written_bytes();
    current.uncompressed_bytes = sink->uncompressed_bytes();
    sink.reset();
    done.push_back(current);
  }

  void write_batch(std::span<const Quad> quads) {
    std::string chunk;
    chunk.reserve(quads.size() * 160);
    bool touched = false;
    for (const auto& q : quads) {
      if (options.max_statements_per_file > 0 && sink && current.statements >= options.max_statements_per_file) {
        if (!chunk.empty()) sink->write(chunk);
        chunk.clear();
        ++current.flushes;
        close_file();
      }
      if (!sink) {
        open();
        touched = false;
      }
      if (options.format == RdfFormat::TriG && (!open_graph || *open_graph != q.graph)) {
        if (open_graph) chunk += "}\n";
        chunk += "<" + q.graph.str() + "> {\n";
        open_graph = q.graph;
      }
      if (options.format == RdfFormat::TriG) chunk += "  ";
      chunk += serialize_statement(q, options.format);
      chunk += '\n';
      ++current.statements;
      touched = true;
    }
    if (!chunk.empty()) sink->write(chunk);
    if (touched) ++current.flushes;
  }

  void cleanup() noexcept {
    std::error_code ec;
    if (sink) {
      try {
        sink->close();
      } catch (...) {
      }
      sink.reset();
      fs::remove(current_path(), ec);
    }
  }
};

PartWriter::PartWriter(fs::path dir, std::string kind, int worker, PartOptions options)
    : state_(std::make_unique<State>()) {
  state_->dir = std::move(dir);
  state_->kind = std::move(kind);
  state_->worker = worker;
  state_->options = options;
  State* s = state_.get();
  state_->buffer = std::make_unique<TripleBuffer>(options.buffer_capacity, [s](std::span<const Quad> quads) {
    try {
      s->write_batch(quads);
    } catch (...) {
      s->cleanup();
      throw;
    }
  });
}

PartWriter::~PartWriter() {
  if (state_ && state_->sink) state_->cleanup();
}

PartWriter::PartWriter(PartWriter&&) noexcept = default;
PartWriter& PartWriter::operator=(PartWriter&&) noexcept = default;

void PartWriter::write(Quad quad) { state_->buffer->push(std::move(quad)); }

std::vector<OutputPart> PartWriter::finish() {
  state_->buffer->flush();
  try {
    state_->close_file();
  } catch (...) {
    state_->cleanup();
    throw;
  }
  return std::move(state_->done);
}

void PartWriter::abort() {
  state_->cleanup();
  std::error_code ec;
  for (const auto& p : state_->done) fs::remove(state_->dir / p.file, ec);
  state_->done.clear();
}

std::vector<OutputPart> write_parts(std::span<const Quad> quads, const fs::path& out_dir, const std::string& kind,
                                    int worker, const PartOptions& options) {
  PartWriter writer(out_dir, kind, worker, options);
  try {
    for (const auto& q : quads) writer.write(q);
    return writer.finish();
  } catch (...) {
    writer.abort();
    throw;
  }
}

nlohmann::json to_json(const Manifest& m) {
  nlohmann::json counts = nlohmann::json::object();
  for (auto kind : kAllKinds) {
    auto it = m.entity_counts.find(kind);
    counts[std::string(segment(kind))] = it == m.entity_counts.end() ? 0 : it->second;
  }
  nlohmann::json parts = nlohmann::json::array();
  std::uint64_t raw = 0, packed = 0;
  for (const auto& p : m.parts) {
    parts.push_back({{"file", p.file},
                     {"kind", p.kind},
                     {"worker", p.worker},
                     {"sequence", p.sequence},
                     {"format", extension(p.format)},
                     {"compressed", p.compressed},
                     {"statements", p.statements},
                     {"bytes", p.bytes},
                     {"uncompressed_bytes", p.uncompressed_bytes},
                     {"flushes", p.flushes}});
    raw += p.uncompressed_bytes;
    packed += p.bytes;
  }
  double reduction = raw == 0 ? 0.0 : 100.0 * (1.0 - static_cast<double>(packed) / static_cast<double>(raw));
  return {{"snapshot_root", m.snapshot_root},
          {"config_digest", m.config_digest},
          {"entity_counts", counts},
          {"parts", parts},
          {"triple_total", m.triple_total},
          {"rejected_records", m.rejected_records},
          {"malformed_lines", m.malformed_lines},
          {"superseded_records", m.superseded_records},
          {"compression",
           {{"uncompressed_bytes", raw},
            {"stored_bytes", packed},
            {"size_reduction_percent", std::round(reduction * 100.0) / 100.0},
            {"reference_reduction_percent", 80}}},
          {"generated_at", m.generated_at}};
}

Manifest manifest_from_json(const nlohmann::json& j) {
  Manifest m;
  m.snapshot_root = j.at("snapshot_root").get<std::string>();
  m.config_digest = j.at("config_digest").get<std::string>();
  for (auto kind : kAllKinds) m.entity_counts[kind] = j.at("entity_counts").at(std::string(segment(kind))).get<long long>();
  for (const auto& p : j.at("parts")) {
    OutputPart part;
    part.file = p.at("file").get<std::string>();
    part.kind = p.at("kind").get<std::string>();
    part.worker = p.at("worker").get<int>();
    part.sequence = p.at("sequence").get<int>();
    part.format = parse_format(p.at("format").get<std::string>()).value_or(RdfFormat::NTriples);
    part.compressed = p.at("compressed").get<bool>();
    part.statements = p.at("statements").get<long long>();
    part.bytes = p.at("bytes").get<std::uint64_t>();
    part.uncompressed_bytes = p.at("uncompressed_bytes").get<std::uint64_t>();
    part.flushes = p.at("flushes").get<std::size_t>();
    m.parts.push_back(std::move(part));
  }
  m.triple_total = j.at("triple_total").get<long long>();
  m.rejected_records = j.at("rejected_records").get<long long>();
  m.malformed_lines = j.at("malformed_lines").get<long long>();
  m.superseded_records = j.value("superseded_records", 0LL);
  m.generated_at = j.value("generated_at", "");
  return m;
}

void write_manifest(const fs::path& path, const Manifest& manifest) {
  long long sum = std::accumulate(manifest.parts.begin(), manifest.parts.end(), 0LL,
                                  [](long long acc, const OutputPart& p) { return acc + p.statements; });
  if (sum != manifest.triple_total)
    throw Error("InconsistentManifest",
                "triple_total " + std::to_string(manifest.triple_total) + " != sum of parts " + std::to_string(sum));
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("IoFailure", "cannot write " + path.string());
  out << to_json(manifest).dump(2) << '\n';
  if (!out) throw Error("IoFailure", "cannot write " + path.string());
}

Manifest read_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("IoFailure", "cannot read " + path.string());
  return manifest_from_json(nlohmann::json::parse(in));
}

std::string utc_timestamp() {
  auto now = std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
  auto days = std::chrono::floor<std::chrono::days>(now);
  std::chrono::year_month_day ymd{days};
  std::chrono::hh_mm_ss hms{now - days};
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02ld:%02ld:%02ldZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<long>(hms.hours().count()), static_cast<long>(hms.minutes().count()),
                static_cast<long>(hms.seconds().count()));
  return buf;
}

}  // namespace soa
