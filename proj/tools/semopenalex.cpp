// semopenalex: snapshot conversion, validation, analytics, Linked Data
// serving and embedding training from one binary.

#include <atomic>
#include <chrono>
#include <csignal>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "soa/embed.hpp"
#include "soa/ld_server.hpp"
#include "soa/log.hpp"
#include "soa/pipeline.hpp"
#include "soa/queries.hpp"
#include "soa/samplegen.hpp"
#include "soa/triple_index.hpp"

namespace fs = std::filesystem;
using namespace soa;

namespace {

std::atomic<bool> g_interrupted{false};

extern "C" void on_signal(int) { g_interrupted = true; }

// Failing to read an input is an input error (exit 2), not an output error.
template <typename Fn>
auto reading(Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.code() == "IoFailure") throw Error("InputFailure", e.what());
    throw;
  }
}

TripleIndex load_index(const std::vector<fs::path>& inputs) {
  LoadReport report;
  auto index = reading([&] { return load(inputs, &report); });
  log::info("index loaded", {{"read", report.read}, {"duplicates", report.duplicates}, {"unique", report.unique}});
  return index;
}

// Writes to `path`, or stdout when it is empty or "-".
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw Error("IoFailure", "cannot write " + path);
}

std::string trend_csv(const TrendTable& table) {
  std::string out = "concept,year,works\r\n";
  for (const auto& [key, n] : table) {
    std::string label = key.first;
    if (label.find_first_of(",\"\r\n") != std::string::npos) {
      std::string quoted = "\"";
      for (char ch : label) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      label = quoted + "\"";
    }
    out += label + "," + std::to_string(key.second) + "," + std::to_string(n) + "\r\n";
  }
  return out;
}

std::pair<std::string, int> split_bind(const std::string& bind) {
  auto colon = bind.rfind(':');
  if (colon == std::string::npos) throw CLI::ValidationError("--bind", "expected HOST:PORT");
  int port = 0;
  try {
    port = std::stoi(bind.substr(colon + 1));
  } catch (const std::exception&) {
    throw CLI::ValidationError("--bind", "port is not a number");
  }
  if (port < 0 || port > 65535) throw CLI::ValidationError("--bind", "port out of range");
  return {bind.substr(0, colon), port};
}

const std::map<std::string, RdfFormat> kFormats = {
    {"nt", RdfFormat::NTriples}, {"nq", RdfFormat::NQuads}, {"trig", RdfFormat::TriG}};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Converts OpenAlex snapshots into the SemOpenAlex RDF knowledge graph and works with the result.\n"
               "Every option can also be set through the SOA_* environment variable shown next to it."};
  app.require_subcommand(1);
  app.set_version_flag("--version", "semopenalex 1.0.0");

  std::string log_level = "info";
  app.add_option("--log-level", log_level, "Logging threshold for stderr records: debug, info, warn, error, off")
      ->envname("SOA_LOG_LEVEL")
      ->check(CLI::IsMember({"debug", "info", "warn", "error", "off"}))
      ->capture_default_str();

  // ---- convert ----
  ConvertConfig convert_cfg;
  std::string convert_format = "nt";
  std::vector<std::string> convert_kinds;
  auto* convert_cmd = app.add_subcommand("convert", "Convert a snapshot into RDF part files, manifest, ontology and VoID");
  convert_cmd->add_option("--snapshot-root", convert_cfg.snapshot_root, "Snapshot directory containing data/<kind>/")
      ->envname("SOA_SNAPSHOT_ROOT")
      ->required();
  convert_cmd->add_option("--out", convert_cfg.out_dir, "Output directory; stale *_part_* files are removed")
      ->envname("SOA_OUT")
      ->required();
  convert_cmd->add_option("--workers", convert_cfg.workers, "Parallel workers, each owning whole part files")
      ->envname("SOA_WORKERS")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  convert_cmd->add_option("--kinds", convert_kinds, "Comma-separated kinds to convert (default: all)")
      ->envname("SOA_KINDS")
      ->delimiter(',')
      ->check(CLI::IsMember({"works", "authors", "sources", "institutions", "concepts", "publishers"}));
  convert_cmd->add_option("--format", convert_format, "Output syntax: nt, nq or trig")
      ->envname("SOA_FORMAT")
      ->check(CLI::IsMember({"nt", "nq", "trig"}))
      ->capture_default_str();
  convert_cmd->add_flag("--gzip", convert_cfg.gzip, "Compress part files with gzip")->envname("SOA_GZIP");
  convert_cmd->add_option("--buffer-size", convert_cfg.buffer_size, "Statements buffered per writer before a flush")
      ->envname("SOA_BUFFER_SIZE")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  convert_cmd->add_option("--max-statements-per-file", convert_cfg.max_statements_per_file,
                          "Start a new part file after this many statements (0: unlimited)")
      ->envname("SOA_MAX_STATEMENTS_PER_FILE")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  convert_cmd->add_option("--seed", convert_cfg.seed, "Recorded in the configuration digest")
      ->envname("SOA_SEED")
      ->capture_default_str();

  // ---- validate ----
  std::vector<fs::path> validate_inputs;
  bool validate_json = false;
  auto* validate_cmd = app.add_subcommand("validate", "Re-parse RDF output and report invalid lines, dangling references and duplicates");
  validate_cmd->add_option("inputs", validate_inputs, "RDF files or directories of part files")
      ->envname("SOA_IN")
      ->required();
  validate_cmd->add_flag("--json", validate_json, "Print the report as JSON")->envname("SOA_JSON");

  // ---- stats ----
  std::vector<fs::path> stats_inputs;
  std::string stats_out = "text";
  auto* stats_cmd = app.add_subcommand("stats", "Entity counts and institution histograms");
  stats_cmd->add_option("--in", stats_inputs, "RDF files or directories of part files")->envname("SOA_IN")->required();
  stats_cmd->add_option("--out", stats_out, "Report format: text or json")
      ->envname("SOA_OUT_FORMAT")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  // ---- query ----
  auto* query_cmd = app.add_subcommand("query", "Analytical queries over converted output");
  query_cmd->require_subcommand(1);

  std::vector<fs::path> top_inputs;
  std::string top_concept = kTopCitedConcept, top_out = "csv", top_file;
  std::size_t top_limit = kTopCitedLimit;
  auto* top_cmd = query_cmd->add_subcommand("top-cited", "Most cited works tagged with a concept, with first authors");
  top_cmd->add_option("--in", top_inputs, "RDF files or directories of part files")->envname("SOA_IN")->required();
  top_cmd->add_option("--concept", top_concept, "skos:prefLabel of the concept")->envname("SOA_CONCEPT")->capture_default_str();
  top_cmd->add_option("--limit", top_limit, "Maximum rows")->envname("SOA_LIMIT")->capture_default_str();
  top_cmd->add_option("--out", top_out, "Result format: csv or json")
      ->envname("SOA_OUT_FORMAT")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  top_cmd->add_option("--output", top_file, "Result file (default: stdout)")->envname("SOA_OUTPUT");

  std::vector<fs::path> trend_inputs;
  std::string trend_institution = kTrendInstitution, trend_out = "csv", trend_file;
  std::vector<std::string> trend_labels = trend_concepts();
  int trend_from = kTrendYears.first, trend_to = kTrendYears.last;
  auto* trend_cmd = query_cmd->add_subcommand("trend", "Works per concept and year with an author at an institution");
  trend_cmd->add_option("--in", trend_inputs, "RDF files or directories of part files")->envname("SOA_IN")->required();
  trend_cmd->add_option("--institution", trend_institution, "foaf:name of the institution")
      ->envname("SOA_INSTITUTION")
      ->capture_default_str();
  trend_cmd->add_option("--concept", trend_labels, "Concept label; repeat for several")
      ->envname("SOA_CONCEPTS")
      ->delimiter(',')
      ->capture_default_str();
  trend_cmd->add_option("--from", trend_from, "First year")->envname("SOA_FROM")->capture_default_str();
  trend_cmd->add_option("--to", trend_to, "Last year (inclusive)")->envname("SOA_TO")->capture_default_str();
  trend_cmd->add_option("--out", trend_out, "Result format: csv or json")
      ->envname("SOA_OUT_FORMAT")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  trend_cmd->add_option("--output", trend_file, "Result file (default: stdout)")->envname("SOA_OUTPUT");

  // ---- serve ----
  std::vector<fs::path> serve_inputs;
  std::string bind = "127.0.0.1:8080";
  ServerOptions server_options;
  auto* serve_cmd = app.add_subcommand("serve", "Serve entity descriptions over HTTP with content negotiation");
  serve_cmd->add_option("--in", serve_inputs, "RDF files or directories of part files")->envname("SOA_IN")->required();
  serve_cmd->add_option("--bind", bind, "HOST:PORT to listen on; port 0 picks a free port")
      ->envname("SOA_BIND")
      ->capture_default_str();
  serve_cmd->add_option("--base-iri", server_options.base_iri, "IRI prefix that request paths are appended to")
      ->envname("SOA_BASE_IRI")
      ->capture_default_str();
  serve_cmd->add_flag("--html-fallback", server_options.html_fallback,
                      "Answer text/html and text/plain with a plain-text statement listing instead of 406")
      ->envname("SOA_HTML_FALLBACK");

  // ---- embed ----
  std::vector<fs::path> embed_inputs;
  embed::TrainConfig train_cfg;
  std::string model_name = "distmult", vectors_path = "vectors.tsv", eval_path;
  auto* embed_cmd = app.add_subcommand("embed", "Train TransE, DistMult or ComplEx embeddings and evaluate link prediction");
  embed_cmd->add_option("--in", embed_inputs, "RDF files or directories of part files")->envname("SOA_IN")->required();
  embed_cmd->add_option("--model", model_name, "transe, distmult or complex")
      ->envname("SOA_MODEL")
      ->check(CLI::IsMember({"transe", "distmult", "complex"}))
      ->capture_default_str();
  embed_cmd->add_option("--dim", train_cfg.dim, "Embedding dimension (even for complex)")
      ->envname("SOA_DIM")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  embed_cmd->add_option("--batch", train_cfg.batch_size, "Positives per minibatch")
      ->envname("SOA_BATCH")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  embed_cmd->add_option("--epochs", train_cfg.epochs, "Passes over the training split")
      ->envname("SOA_EPOCHS")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  embed_cmd->add_option("--lr", train_cfg.learning_rate, "SGD learning rate")->envname("SOA_LR")->capture_default_str();
  embed_cmd->add_option("--negatives", train_cfg.negatives, "Corruptions per positive")
      ->envname("SOA_NEGATIVES")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  embed_cmd->add_option("--margin", train_cfg.margin, "TransE hinge margin")->envname("SOA_MARGIN")->capture_default_str();
  embed_cmd->add_option("--l2", train_cfg.l2, "DistMult/ComplEx L2 weight")->envname("SOA_L2")->capture_default_str();
  embed_cmd->add_option("--seed", train_cfg.seed, "Seed for the split, initialization and sampling")
      ->envname("SOA_SEED")
      ->capture_default_str();
  embed_cmd->add_option("--out", vectors_path, "Entity vectors as TSV")->envname("SOA_OUT")->capture_default_str();
  embed_cmd->add_option("--eval-out", eval_path, "Evaluation JSON file (default: stdout)")->envname("SOA_EVAL_OUT");

  // ---- samplegen ----
  fs::path sample_out;
  SampleConfig sample_cfg;
  auto* sample_cmd = app.add_subcommand("samplegen", "Write a seeded synthetic snapshot with a ground-truth sidecar");
  sample_cmd->add_option("--out", sample_out, "Snapshot directory to create")->envname("SOA_OUT")->required();
  sample_cmd->add_option("--seed", sample_cfg.seed, "Generator seed")->envname("SOA_SEED")->capture_default_str();
  sample_cmd->add_option("--works", sample_cfg.sizes.works, "Work records")->envname("SOA_WORKS")->capture_default_str();
  sample_cmd->add_option("--authors", sample_cfg.sizes.authors, "Author records")->envname("SOA_AUTHORS")->capture_default_str();
  sample_cmd->add_option("--sources", sample_cfg.sizes.sources, "Source records")->envname("SOA_SOURCES")->capture_default_str();
  sample_cmd->add_option("--institutions", sample_cfg.sizes.institutions, "Institution records")
      ->envname("SOA_INSTITUTIONS")
      ->capture_default_str();
  sample_cmd->add_option("--concepts", sample_cfg.sizes.concepts, "Concept records (at least 4)")
      ->envname("SOA_CONCEPTS_COUNT")
      ->capture_default_str();
  sample_cmd->add_option("--publishers", sample_cfg.sizes.publishers, "Publisher records")
      ->envname("SOA_PUBLISHERS")
      ->capture_default_str();
  sample_cmd->add_option("--edge-case-rate", sample_cfg.edge_case_rate, "Probability that a record carries an edge case")
      ->envname("SOA_EDGE_CASE_RATE")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  sample_cmd->add_option("--records-per-part", sample_cfg.records_per_part, "Records per part file")
      ->envname("SOA_RECORDS_PER_PART")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  log::set_level(log::parse_level(log_level));

  try {
    if (*convert_cmd) {
      convert_cfg.format = kFormats.at(convert_format);
      convert_cfg.log_level = log_level;
      for (const auto& k : convert_kinds) convert_cfg.kinds.insert(*kind_from_plural(k));
      auto result = convert(convert_cfg);
      for (const auto& d : result.diagnostics) std::cerr << d << '\n';
      if (result.exit_code == kExitOk)
        std::cout << "converted " << result.manifest.triple_total << " statements into "
                  << result.manifest.parts.size() << " part files in " << result.seconds << " s\n";
      return result.exit_code;
    }

    if (*validate_cmd) {
      auto report = reading([&] { return validate_outputs(validate_inputs); });
      if (validate_json) {
        std::cout << to_json(report).dump(2) << '\n';
      } else {
        for (const auto& i : report.invalid) std::cout << i.file << ":" << i.line << ": " << i.message << '\n';
        std::cout << "files: " << report.files << "\nstatements: " << report.statements
                  << "\ninvalid lines: " << report.invalid.size()
                  << "\nduplicate statements: " << report.duplicate_statements
                  << "\ndangling references: " << report.dangling_references << " (to "
                  << report.dangling_entities << " entities)\n";
      }
      return report.invalid.empty() ? kExitOk : kExitInput;
    }

    if (*stats_cmd) {
      auto report = report_stats(load_index(stats_inputs));
      std::cout << (stats_out == "json" ? to_json(report).dump(2) + "\n" : to_text(report));
      return kExitOk;
    }

    if (*top_cmd) {
      auto rows = query_top_cited_by_concept(load_index(top_inputs), top_concept, top_limit);
      emit(top_file, top_out == "json" ? to_json(rows).dump(2) + "\n" : to_csv(rows));
      return kExitOk;
    }

    if (*trend_cmd) {
      if (trend_from > trend_to) throw CLI::ValidationError("--from", "must not exceed --to");
      auto table = query_trend(load_index(trend_inputs), trend_institution, trend_labels, {trend_from, trend_to});
      emit(trend_file, trend_out == "json" ? to_json(table).dump(2) + "\n" : trend_csv(table));
      return kExitOk;
    }

    if (*serve_cmd) {
      auto [host, port] = split_bind(bind);
      server_options.host = host;
      server_options.port = port;
      auto index = load_index(serve_inputs);
      LdServer server(index, server_options);
      server.start();
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      log::info("serving", {{"host", host}, {"port", server.port()}, {"statements", index.size()}});
      std::cout << "listening on http://" << host << ":" << server.port() << "/" << std::endl;
      while (!g_interrupted) std::this_thread::sleep_for(std::chrono::milliseconds(100));
      server.stop();
      log::info("server stopped");
      return kExitOk;
    }

    if (*embed_cmd) {
      train_cfg.kind = *embed::parse_model_kind(model_name);
      embed::validate(train_cfg);
      auto index = load_index(embed_inputs);
      auto ids = embed::build_id_triples(index, {}, train_cfg.seed);
      log::info("split", {{"entities", ids.entity_count()},
                          {"relations", ids.relation_count()},
                          {"train", ids.train.size()},
                          {"valid", ids.valid.size()},
                          {"test", ids.test.size()},
                          {"moved_to_train", ids.moved_to_train}});
      auto model = embed::train(ids, train_cfg);
      auto eval = embed::to_json(embed::evaluate(model, ids));
      eval["model"] = std::string(embed::name(train_cfg.kind));
      eval["dim"] = train_cfg.dim;
      eval["epochs"] = train_cfg.epochs;
      eval["random_baseline_mrr"] = embed::random_baseline_mrr(ids, ids.test);
      std::ofstream vectors(vectors_path, std::ios::binary | std::ios::trunc);
      embed::write_vectors(vectors, model, ids);
      if (!vectors) throw Error("IoFailure", "cannot write " + vectors_path);
      emit(eval_path, eval.dump(2) + "\n");
      return kExitOk;
    }

    if (*sample_cmd) {
      auto truth = generate_sample(sample_out, sample_cfg);
      std::cout << "wrote " << truth.records_written << " records to " << sample_out.string() << " (expected "
                << truth.triple_total << " statements)\n";
      return kExitOk;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    log::error("failed", {{"code", e.code()}, {"detail", e.what()}});
    std::cerr << e.what() << '\n';
    if (e.code() == "InvalidConfig") return kExitUsage;
    if (e.code() == "IoFailure" || e.code() == "BindFailure") return kExitOutput;
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return kExitInput;
  }
  return kExitUsage;
}
