#include "soa/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>
#include <unordered_set>

#include "soa/ingest.hpp"
#include "soa/log.hpp"
#include "soa/mapping.hpp"
#include "soa/rdf_parser.hpp"
#include "soa/triple_index.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace soa {

std::string config_digest(const ConvertConfig& c) {
  json kinds = json::array();
  for (auto k : c.kinds) kinds.push_back(plural(k));
  json canonical = {{"workers", c.workers},
                    {"buffer_size", c.buffer_size},
                    {"max_statements_per_file", c.max_statements_per_file},
                    {"format", extension(c.format)},
                    {"gzip", c.gzip},
                    {"seed", c.seed},
                    {"kinds", kinds},
                    {"log_level", c.log_level}};
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical.dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw Error("IoFailure", "cannot write " + path.string());
}

void remove_stale_parts(const fs::path& dir) {
  std::vector<fs::path> stale;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().filename().string().find("_part_") != std::string::npos)
      stale.push_back(entry.path());
  for (const auto& p : stale) fs::remove(p);
}

struct WorkerOutcome {
  std::vector<OutputPart> parts;
  std::map<EntityKind, long long> entities;
  long long rejected = 0;
  long long malformed = 0;
  long long warnings = 0;
  std::vector<std::string> diagnostics;
  bool input_failure = false;
  bool output_failure = false;
};

}  // namespace

ConvertResult convert(const ConvertConfig& config) {
  auto started = std::chrono::steady_clock::now();
  ConvertResult result;
  auto finish = [&](int code) {
    result.exit_code = code;
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return result;
  };

  if (config.workers < 1 || config.buffer_size < 1) {
    result.diagnostics.push_back("workers and buffer size must be positive");
    return finish(kExitUsage);
  }

  SnapshotLayout layout;
  DedupPlan plan;
  try {
    layout = discover(config.snapshot_root);
    if (!config.kinds.empty())
      std::erase_if(layout.parts, [&](const auto& entry) { return !config.kinds.contains(entry.first); });
    plan = plan_dedup(layout, config.workers);
  } catch (const Error& e) {
    result.diagnostics.push_back(e.what());
    log::error("cannot read snapshot", {{"code", e.code()}, {"detail", e.what()}});
    return finish(kExitInput);
  }

  try {
    fs::create_directories(config.out_dir);
    remove_stale_parts(config.out_dir);
  } catch (const fs::filesystem_error& e) {
    result.diagnostics.push_back(std::string("IoFailure: ") + e.what());
    log::error("cannot prepare output directory", {{"detail", e.what()}});
    return finish(kExitOutput);
  }

  auto parts = layout.all_parts();
  PartOptions options{config.format, config.gzip, config.buffer_size, config.max_statements_per_file};
  std::vector<WorkerOutcome> outcomes(static_cast<std::size_t>(config.workers));
  std::atomic<bool> stop{false};

  auto run = [&](int worker) {
    WorkerOutcome& out = outcomes[static_cast<std::size_t>(worker)];
    std::map<EntityKind, PartWriter> writers;
    auto writer_for = [&](EntityKind kind) -> PartWriter& {
      auto it = writers.find(kind);
      if (it == writers.end())
        it = writers.emplace(kind, PartWriter(config.out_dir, std::string(plural(kind)), worker, options)).first;
      return it->second;
    };
    try {
      for (std::size_t i = static_cast<std::size_t>(worker); i < parts.size() && !stop;
           i += static_cast<std::size_t>(config.workers)) {
        const PartFile& part = parts[i];
        StreamStats stats;
        try {
          stats = stream_records(part, [&](RawEntityRecord&& rec) {
            if (!plan.keeps(rec.kind, dedup_key(rec), i, rec.line_number)) return;
            try {
              auto mapped = map_entity(rec);
              for (const auto& d : mapped.diagnostics)
                log::debug("mapping", {{"id", rec.id()}, {"rule", d.rule_id}, {"detail", d.reason}});
              out.warnings += static_cast<long long>(mapped.diagnostics.size());
              auto& writer = writer_for(rec.kind);
              for (auto& q : mapped.quads) writer.write(std::move(q));
              ++out.entities[rec.kind];
            } catch (const Error& e) {
              if (std::string_view(e.code()) != "RejectedRecord") throw;
              ++out.rejected;
              out.diagnostics.push_back(part.path.string() + ":" + std::to_string(rec.line_number) +
                                        ": " + e.what());
            }
          });
        } catch (const Error& e) {
          if (std::string_view(e.code()) != "CorruptArchive") throw;
          out.input_failure = true;
          out.diagnostics.push_back(part.path.string() + ": " + e.what());
        }
        for (const auto& m : stats.malformed)
          log::warn("malformed line", {{"file", m.path.string()}, {"line", m.line_number}, {"detail", m.reason}});
        out.malformed += static_cast<long long>(stats.malformed.size());
      }
      for (auto& [kind, writer] : writers) {
        auto done = writer.finish();
        out.parts.insert(out.parts.end(), done.begin(), done.end());
      }
    } catch (const std::exception& e) {
      for (auto& [kind, writer] : writers) writer.abort();
      for (const auto& p : out.parts) {
        std::error_code ec;
        fs::remove(config.out_dir / p.file, ec);
      }
      out.parts.clear();
      out.output_failure = true;
      out.diagnostics.push_back(dynamic_cast<const Error*>(&e) ? e.what() : std::string("IoFailure: ") + e.what());
      stop = true;
    }
  };

  std::vector<std::thread> pool;
  for (int w = 1; w < config.workers; ++w) pool.emplace_back(run, w);
  run(0);
  for (auto& t : pool) t.join();

  Manifest& m = result.manifest;
  m.snapshot_root = config.snapshot_root.string();
  m.config_digest = config_digest(config);
  m.superseded_records = plan.superseded;
  for (auto kind : kAllKinds) m.entity_counts[kind] = 0;
  bool input_failure = false, output_failure = false;
  for (auto& o : outcomes) {
    m.parts.insert(m.parts.end(), o.parts.begin(), o.parts.end());
    for (auto [kind, n] : o.entities) m.entity_counts[kind] += n;
    m.rejected_records += o.rejected;
    m.malformed_lines += o.malformed;
    result.mapping_warnings += o.warnings;
    result.diagnostics.insert(result.diagnostics.end(), o.diagnostics.begin(), o.diagnostics.end());
    input_failure |= o.input_failure;
    output_failure |= o.output_failure;
  }
  std::sort(m.parts.begin(), m.parts.end(), [](const OutputPart& a, const OutputPart& b) { return a.file < b.file; });
  for (const auto& p : m.parts) m.triple_total += p.statements;
  m.generated_at = utc_timestamp();

  if (!output_failure) {
    try {
      auto ontology = emit_ontology();
      write_text(config.out_dir / "ontology.ttl", write_turtle(ontology));
      auto dataset = emit_void(m.entity_counts, m.triple_total);
      write_text(config.out_dir / "void.ttl", write_turtle(dataset));
      write_manifest(config.out_dir / "manifest.json", m);
    } catch (const Error& e) {
      output_failure = true;
      result.diagnostics.push_back(e.what());
    }
  }

  for (const auto& d : result.diagnostics) log::error("convert", {{"detail", d}});
  log::info("convert finished", {{"triples", m.triple_total},
                                 {"parts", m.parts.size()},
                                 {"rejected", m.rejected_records},
                                 {"malformed_lines", m.malformed_lines},
                                 {"superseded", m.superseded_records}});
  if (output_failure) return finish(kExitOutput);
  if (input_failure || m.rejected_records > 0) return finish(kExitInput);
  return finish(kExitOk);
}

ValidateReport validate_outputs(const std::vector<fs::path>& inputs) {
  ValidateReport report;
  auto files = expand_inputs(inputs);
  std::unordered_set<std::string> seen;
  std::unordered_set<std::string> subjects;
  std::map<std::string, long long> object_entities;  // entity IRI -> references

  for (const auto& file : files) {
    ++report.files;
    parse_file(
        file,
        [&](ParsedStatement&& st) {
          ++report.statements;
          std::string key = term_to_string(st.subject) + ' ' + term_to_string(st.predicate) + ' ' +
                            term_to_string(st.object);
          if (st.graph) key += ' ' + term_to_string(*st.graph);
          if (!seen.insert(std::move(key)).second) ++report.duplicate_statements;
          subjects.insert(st.subject.str());
          if (const auto* o = std::get_if<Iri>(&st.object); o && entity_id_of(*o)) ++object_entities[o->str()];
        },
        [&](const SyntaxError& e) { report.invalid.push_back({file.string(), e.line, e.message}); });
  }
  for (const auto& [iri, n] : object_entities) {
    if (subjects.contains(iri)) continue;
    ++report.dangling_entities;
    report.dangling_references += n;
  }
  return report;
}

json to_json(const ValidateReport& r) {
  json invalid = json::array();
  for (const auto& i : r.invalid) invalid.push_back({{"file", i.file}, {"line", i.line}, {"message", i.message}});
  return {{"files", r.files},
          {"statements", r.statements},
          {"invalid_lines", invalid},
          {"duplicate_statements", r.duplicate_statements},
          {"dangling_references", r.dangling_references},
          {"dangling_entities", r.dangling_entities}};
}

}  // namespace soa
