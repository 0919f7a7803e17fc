#include "soa/samplegen.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <set>
#include <unordered_map>

#include "soa/gzip_io.hpp"
#include "soa/rng.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace soa {

long long& SampleSizes::of(EntityKind kind) {
  switch (kind) {
    case EntityKind::Work: return works;
    case EntityKind::Author: return authors;
    case EntityKind::Source: return sources;
    case EntityKind::Institution: return institutions;
    case EntityKind::Concept: return concepts;
    case EntityKind::Publisher: return publishers;
  }
  return works;
}

long long SampleSizes::of(EntityKind kind) const { return const_cast<SampleSizes*>(this)->of(kind); }

std::vector<std::string> trend_concepts() { return {"Semantic Web", "Machine learning", "Natural language processing"}; }

namespace {

constexpr std::array<const char*, 40> kWords = {
    "graph",    "knowledge", "linked",    "open",     "data",      "scholarly", "semantic", "query",
    "ontology", "citation",  "network",   "learning", "embedding", "analysis",  "model",    "retrieval",
    "metadata", "entity",    "relation",  "vector",   "transfer",  "language",  "neural",   "search",
    "index",    "schema",    "inference", "dataset",  "benchmark", "survey",    "method",   "system",
    "archive",  "mining",    "topic",     "stream",   "scalable",  "robust",    "modular",  "adaptive"};

constexpr std::array<const char*, 7> kUnicodeWords = {"Ünïcödé", "数据集", "Ελληνικά", "naïve", "Größe", "🚀rocket",
                                                      "Đặng"};
constexpr std::array<const char*, 12> kGiven = {"Ada",  "Lin",   "Maria", "Kenji", "Amara", "Jonas",
                                                "Priya", "Omar", "Sofia", "Wei",   "Lucas", "Noor"};
constexpr std::array<const char*, 12> kFamily = {"Fischer", "Okafor", "Tanaka", "Garcia", "Novak",  "Singh",
                                                 "Larsen",  "Haddad", "Moreau", "Chen",   "Kowalski", "Silva"};
constexpr std::array<const char*, 8> kCountries = {"US", "DE", "GB", "CN", "FR", "JP", "IN", "BR"};
constexpr std::array<const char*, 8> kInstitutionTypes = {"education", "company",   "government", "facility",
                                                          "healthcare", "nonprofit", "archive",    "other"};
constexpr std::array<const char*, 6> kPublisherCountries = {"US", "GB", "DE", "NL", "CH", "JP"};
constexpr std::array<const char*, 3> kSpecialConcepts = {"Semantic Web", "Machine learning",
                                                         "Natural language processing"};

constexpr long long kWorkBase = 100000, kAuthorBase = 200000, kSourceBase = 300000, kInstitutionBase = 400000,
                    kConceptBase = 500000, kPublisherBase = 600000, kDanglingBase = 900000000;

std::string oa(char prefix, long long n) { return "https://openalex.org/" + std::string(1, prefix) + std::to_string(n); }
std::string soa_iri(std::string_view seg, char prefix, long long n) {
  return "https://semopenalex.org/" + std::string(seg) + "/" + std::string(1, prefix) + std::to_string(n);
}

// Text with its raw (as written) and expected (after cleaning) forms.
struct Text {
  std::string raw;
  std::string expected;
};

class Generator {
 public:
  Generator(const SampleConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {}

  std::uint64_t pick(std::uint64_t n) { return uniform_below(rng_, n); }
  bool chance(double p) { return unit_interval(rng_) < p; }
  const char* word() { return kWords[pick(kWords.size())]; }

  // Decides whether this record carries an edge case and which one.
  std::string edge(std::initializer_list<const char*> applicable) {
    if (!chance(cfg_.edge_case_rate)) return {};
    std::vector<const char*> v(applicable);
    std::string chosen = v[pick(v.size())];
    ++truth.edge_cases[chosen];
    ++truth.records_with_edge_case;
    return chosen;
  }

  // Builds a multi-word text; name-like edge cases alter only the raw form,
  // except unicode and backslash words which survive cleaning.
  Text text(std::vector<std::string> words, const std::string& edge_case) {
    if (edge_case == "unicode_text") words[pick(words.size())] = kUnicodeWords[pick(kUnicodeWords.size())];
    if (edge_case == "backslash") words[pick(words.size())] += "\\x";
    Text t;
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (i) t.expected += ' ';
      t.expected += words[i];
    }
    if (edge_case == "newline_in_text") {
      static constexpr std::array<const char*, 3> kBreaks = {"\n", "\r\n", " \r\n  "};
      t.raw = "  ";
      for (std::size_t i = 0; i < words.size(); ++i) {
        if (i) t.raw += i == 1 ? kBreaks[pick(kBreaks.size())] : " ";
        t.raw += words[i];
      }
      t.raw += " \n";
    } else {
      t.raw = t.expected;
    }
    return t;
  }

  std::vector<std::string> words(std::size_t lo, std::size_t hi) {
    std::vector<std::string> out;
    auto n = lo + pick(hi - lo + 1);
    for (std::size_t i = 0; i < n; ++i) out.emplace_back(word());
    return out;
  }

  // counts_by_year entries; returns the number of statements they produce.
  long long counts_by_year(json& record, bool with_works) {
    auto n = pick(4);
    std::vector<int> years{2018, 2019, 2020, 2021, 2022, 2023};
    shuffle(years, rng_);
    years.resize(n);
    std::sort(years.begin(), years.end(), std::greater<>());
    json arr = json::array();
    for (int y : years) {
      json e = {{"year", y}, {"cited_by_count", static_cast<long long>(pick(200))}};
      if (with_works) e["works_count"] = static_cast<long long>(pick(50));
      arr.push_back(e);
    }
    record["counts_by_year"] = arr;
    return static_cast<long long>(n) * (with_works ? 5 : 4);
  }

  template <typename T>
  std::vector<T> distinct_sample(const std::vector<T>& pool, std::size_t n) {
    std::vector<T> out;
    for (auto i : distinct_indices(pool.size(), n)) out.push_back(pool[i]);
    return out;
  }

  // min(n, size) distinct indices below `size`: a partial Fisher-Yates
  // shuffle over a sparse swap table, O(n) whatever the size.
  std::vector<std::size_t> distinct_indices(std::size_t size, std::size_t n) {
    n = std::min(n, size);
    std::unordered_map<std::size_t, std::size_t> swapped;
    auto at = [&](std::size_t i) {
      auto it = swapped.find(i);
      return it == swapped.end() ? i : it->second;
    };
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t j = i + pick(size - i);
      std::size_t vj = at(j);
      swapped[j] = at(i);
      out.push_back(vj);
    }
    return out;
  }

  const SampleConfig& cfg_;
  std::mt19937_64 rng_;
  GroundTruth truth;
};

struct AuthorInfo {
  std::string name;
  std::optional<long long> institution;
};

struct WorkInfo {
  long long number;
  std::string title;  // expected
  long long cited = 0;
  int year = 0;
  std::vector<long long> concepts;
  std::vector<long long> authors;  // in authorship order
};

void write_kind(const fs::path& out, EntityKind kind, const std::vector<json>& latest, const std::vector<json>& older,
                long long per_part) {
  auto write_dir = [&](const char* date, const std::vector<json>& records) {
    if (records.empty()) return;
    fs::path dir = out / "data" / std::string(plural(kind)) / (std::string("updated_date=") + date);
    fs::create_directories(dir);
    for (std::size_t start = 0, part = 0; start < records.size(); start += static_cast<std::size_t>(per_part), ++part) {
      char name[32];
      std::snprintf(name, sizeof(name), "part_%03zu.gz", part);
      ByteSink sink(dir / name, true);
      std::string chunk;
      auto end = std::min(records.size(), start + static_cast<std::size_t>(per_part));
      for (auto i = start; i < end; ++i) {
        chunk += records[i].dump();
        chunk += '\n';
      }
      sink.write(chunk);
      sink.close();
    }
  };
  write_dir(kOlderDate, older);
  write_dir(kLatestDate, latest);
}

}  // namespace

GroundTruth generate_sample(const fs::path& out, const SampleConfig& cfg) {
  for (auto kind : kAllKinds)
    if (cfg.sizes.of(kind) < (kind == EntityKind::Concept ? 4 : 1))
      throw Error("InvalidConfig", "sample size for " + std::string(plural(kind)) + " is too small");
  if (cfg.records_per_part < 1) throw Error("InvalidConfig", "records per part must be positive");
  if (!(cfg.edge_case_rate >= 0 && cfg.edge_case_rate <= 1)) throw Error("InvalidConfig", "edge case rate outside [0, 1]");

  Generator g(cfg);
  GroundTruth& truth = g.truth;
  truth.config = cfg;
  std::map<EntityKind, std::vector<json>> latest, older;
  const auto& sz = cfg.sizes;

  // An older, superseded version of a record: same id, stale values.
  auto stale = [&](EntityKind kind, json record) {
    record["display_name"] = "Outdated " + record.value("display_name", std::string("record"));
    record["cited_by_count"] = -1;
    record["updated_date"] = kOlderDate;
    older[kind].push_back(std::move(record));
    ++truth.superseded_records;
  };
  auto add = [&](EntityKind kind, json record, long long triples, const std::string& edge_case) {
    record["updated_date"] = kLatestDate;
    if (edge_case == "older_duplicate") stale(kind, record);
    latest[kind].push_back(std::move(record));
    truth.triple_counts[kind] += triples;
    ++truth.entity_counts[kind];
  };

  // ---- publishers ----
  for (long long p = 0; p < sz.publishers; ++p) {
    auto ec = g.edge({"unicode_text", "newline_in_text", "backslash", "older_duplicate"});
    Text name = g.text({"Publisher", g.word(), std::to_string(p)}, ec);
    auto countries = g.distinct_sample(std::vector<std::string>(kPublisherCountries.begin(), kPublisherCountries.end()),
                                       1 + g.pick(2));
    json r = {{"id", oa('P', kPublisherBase + p)}, {"display_name", name.raw}, {"country_codes", countries}};
    long long triples = 1 + 1 + static_cast<long long>(countries.size()) + g.counts_by_year(r, true);
    add(EntityKind::Publisher, std::move(r), triples, ec);
  }

  // ---- institutions ----
  std::map<std::string, long long> countries, types;
  for (long long i = 0; i < sz.institutions; ++i) {
    bool kit = i == 0;
    auto ec = kit ? g.edge({"older_duplicate"}) : g.edge({"unicode_text", "newline_in_text", "backslash", "older_duplicate"});
    Text name = kit ? Text{kTrendInstitution, kTrendInstitution}
                    : g.text({"University", "of", g.word(), std::to_string(i)}, ec);
    // Skewed so that the country ranking has distinct counts and ties.
    std::string country = kit ? "DE" : kCountries[std::min<std::uint64_t>(g.pick(kCountries.size()), g.pick(kCountries.size()))];
    std::string type = kit ? "education" : kInstitutionTypes[std::min<std::uint64_t>(g.pick(8), g.pick(8))];
    json geo = {{"city", kit ? "Karlsruhe" : std::string("City ") + g.word()},
                {"country_code", country},
                {"latitude", kit ? 49.0094 : -60.0 + static_cast<double>(g.pick(12000)) / 100.0},
                {"longitude", kit ? 8.4044 : -170.0 + static_cast<double>(g.pick(34000)) / 100.0}};
    std::vector<std::string> acronyms;
    for (auto n = g.pick(3); acronyms.size() < n;) {
      std::string a = "U" + std::string(1, static_cast<char>('A' + g.pick(26))) + std::to_string(acronyms.size());
      acronyms.push_back(a);
    }
    json r = {{"id", oa('I', kInstitutionBase + i)},
              {"display_name", name.raw},
              {"country_code", country},
              {"type", type},
              {"geo", geo},
              {"display_name_acronyms", acronyms},
              {"ror", "https://ror.org/0" + std::to_string(1000 + i)}};
    long long triples = 1 + 1 + 1 + 1 + 6 + static_cast<long long>(acronyms.size()) + g.counts_by_year(r, true);
    ++countries[country];
    ++types[type];
    add(EntityKind::Institution, std::move(r), triples, ec);
  }

  // ---- sources ----
  for (long long s = 0; s < sz.sources; ++s) {
    auto ec = g.edge({"unicode_text", "newline_in_text", "backslash", "older_duplicate"});
    Text name = g.text({"Journal", "of", g.word(), std::to_string(s)}, ec);
    std::vector<std::string> issn;
    for (auto n = g.pick(3); issn.size() < n;) {
      char buf[48];
      std::snprintf(buf, sizeof(buf), "%04llu-%03llu%c", static_cast<unsigned long long>(1000 + s),
                    static_cast<unsigned long long>(issn.size()), issn.empty() ? 'X' : '7');
      issn.emplace_back(buf);
    }
    json r = {{"id", oa('S', kSourceBase + s)},
              {"display_name", name.raw},
              {"issn", issn},
              {"host_organization", oa('P', kPublisherBase + static_cast<long long>(g.pick(sz.publishers)))}};
    long long triples = 1 + 1 + static_cast<long long>(issn.size()) + 1 + g.counts_by_year(r, true);
    add(EntityKind::Source, std::move(r), triples, ec);
  }

  // ---- concepts ----
  std::vector<int> concept_level(static_cast<std::size_t>(sz.concepts));
  for (long long c = 0; c < sz.concepts; ++c) {
    bool special = c < 4;
    auto ec = special ? g.edge({"older_duplicate"}) : g.edge({"unicode_text", "newline_in_text", "backslash", "older_duplicate"});
    Text label = c < 3 ? Text{kSpecialConcepts[static_cast<std::size_t>(c)], kSpecialConcepts[static_cast<std::size_t>(c)]}
                 : c == 3 ? Text{"Computer science", "Computer science"}
                          : g.text({"Topic", g.word(), std::to_string(c)}, ec);
    int level = c < 3 ? 1 : c == 3 ? 0 : static_cast<int>(g.pick(4));
    concept_level[static_cast<std::size_t>(c)] = level;
    json ancestors = json::array();
    long long broader = 0;
    if (c < 3) {
      ancestors.push_back({{"id", oa('C', kConceptBase + 3)}, {"display_name", "Computer science"}, {"level", 0}});
      broader = 1;
    } else if (c > 3) {
      for (auto k : g.distinct_indices(static_cast<std::size_t>(c), g.pick(3))) {
        auto j = static_cast<long long>(k);
        int lj = concept_level[static_cast<std::size_t>(j)];
        ancestors.push_back({{"id", oa('C', kConceptBase + j)}, {"level", lj}});
        broader += lj == level - 1;
      }
    }
    json related = json::array();
    for (auto k : g.distinct_indices(static_cast<std::size_t>(sz.concepts - 1), g.pick(3))) {
      auto j = static_cast<long long>(k);
      related.push_back({{"id", oa('C', kConceptBase + (j < c ? j : j + 1))}, {"score", 1.5}});
    }
    bool has_note = g.chance(0.7);
    json r = {{"id", oa('C', kConceptBase + c)},
              {"display_name", label.raw},
              {"level", level},
              {"ancestors", ancestors},
              {"related_concepts", related},
              {"description", has_note ? "A field concerned with " + std::string(g.word()) : ""},
              {"wikidata", "https://www.wikidata.org/wiki/Q" + std::to_string(700000 + c)}};
    long long triples = 1 + 1 + broader + static_cast<long long>(related.size()) + (has_note ? 1 : 0) + 1 + 1 +
                        g.counts_by_year(r, true);
    add(EntityKind::Concept, std::move(r), triples, ec);
  }

  // ---- authors ----
  std::vector<AuthorInfo> authors;
  for (long long a = 0; a < sz.authors; ++a) {
    auto ec = g.edge({"unicode_text", "newline_in_text", "backslash", "older_duplicate"});
    Text name = g.text({kGiven[g.pick(kGiven.size())], kFamily[g.pick(kFamily.size())]}, ec);
    std::optional<long long> inst;
    if (a == 0 || g.chance(0.25)) inst = 0;
    else if (g.chance(0.85)) inst = static_cast<long long>(g.pick(sz.institutions));
    bool wikidata = g.chance(0.3);
    json r = {{"id", oa('A', kAuthorBase + a)},
              {"display_name", name.raw},
              {"works_count", static_cast<long long>(g.pick(300))},
              {"cited_by_count", static_cast<long long>(g.pick(5000))}};
    if (inst) r["last_known_institution"] = {{"id", oa('I', kInstitutionBase + *inst)}, {"country_code", "XX"}};
    else r["last_known_institution"] = nullptr;
    r["ids"] = {{"openalex", oa('A', kAuthorBase + a)}};
    if (wikidata) r["ids"]["wikidata"] = "https://www.wikidata.org/wiki/Q" + std::to_string(800000 + a);
    long long triples = 1 + 1 + 1 + 1 + (inst ? 1 : 0) + (wikidata ? 1 : 0) + g.counts_by_year(r, true);
    authors.push_back({name.expected, inst});
    add(EntityKind::Author, std::move(r), triples, ec);
  }

  // ---- works ----
  std::vector<WorkInfo> works;
  std::vector<long long> all_authors(static_cast<std::size_t>(sz.authors));
  for (long long a = 0; a < sz.authors; ++a) all_authors[static_cast<std::size_t>(a)] = a;
  std::vector<long long> all_institutions(static_cast<std::size_t>(sz.institutions));
  for (long long i = 0; i < sz.institutions; ++i) all_institutions[static_cast<std::size_t>(i)] = i;
  std::vector<long long> all_works(static_cast<std::size_t>(sz.works));
  for (long long w = 0; w < sz.works; ++w) all_works[static_cast<std::size_t>(w)] = w;

  for (long long w = 0; w < sz.works; ++w) {
    auto ec = g.edge({"unicode_text", "newline_in_text", "backslash", "empty_abstract", "duplicate_position",
                      "dangling_reference", "older_duplicate"});
    WorkInfo info;
    info.number = w;
    // A few recurring titles make (title, count) ties in the ranking.
    auto title_words = g.chance(0.05) ? std::vector<std::string>{"A", "survey", "of", "linked", "data"} : g.words(3, 8);
    Text title = g.text(title_words, ec);
    info.title = title.expected;
    info.year = 2012 + static_cast<int>(g.pick(12));
    info.cited = static_cast<long long>(g.pick(60));
    char date[16];
    std::snprintf(date, sizeof(date), "%04d-%02d-%02d", info.year, static_cast<int>(1 + g.pick(12)),
                  static_cast<int>(1 + g.pick(28)));

    json r = {{"id", oa('W', kWorkBase + w)},
              {"display_name", title.raw},
              {"title", title.raw},
              {"publication_year", info.year},
              {"publication_date", date},
              {"cited_by_count", info.cited}};
    long long triples = 1 + 1 + 1 + 1;  // type, created, year, cited
    if (!info.title.empty()) ++triples;

    // Abstract.
    if (ec == "empty_abstract") {
      r["abstract_inverted_index"] = json::object();
    } else if (g.chance(0.9)) {
      auto tokens = g.words(5, 25);
      json inv = json::object();
      for (std::size_t p = 0; p < tokens.size(); ++p) inv[tokens[p]].push_back(p);
      if (ec == "duplicate_position") inv["zzduplicate"].push_back(g.pick(tokens.size()));
      r["abstract_inverted_index"] = inv;
      ++triples;
    } else {
      r["abstract_inverted_index"] = nullptr;
    }

    // Identifiers.
    json ids = {{"openalex", oa('W', kWorkBase + w)}};
    if (g.chance(0.8)) {
      std::string doi = "https://doi.org/10." + std::to_string(1000 + g.pick(9000)) + "/w" + std::to_string(w);
      if (ec == "backslash") doi.insert(doi.size() - 1, "\\");
      ids["doi"] = doi;
      r["doi"] = doi;
      ++triples;
    }
    if (g.chance(0.3)) {
      ids["pmid"] = "https://pubmed.ncbi.nlm.nih.gov/" + std::to_string(30000000 + w);
      ++triples;
    }
    r["ids"] = ids;

    // References.
    json refs = json::array();
    for (auto k : g.distinct_indices(static_cast<std::size_t>(sz.works - 1), g.pick(6))) {
      auto o = static_cast<long long>(k);
      refs.push_back(oa('W', kWorkBase + (o < w ? o : o + 1)));
    }
    triples += static_cast<long long>(refs.size());
    if (ec == "dangling_reference") {
      refs.push_back(oa('W', kDanglingBase + w));
      ++triples;
      ++truth.dangling_references;
    }
    r["referenced_works"] = refs;

    // Concepts: the trend concepts are over-represented.
    std::set<long long> concept_set;
    if (g.chance(0.35)) concept_set.insert(0);
    if (g.chance(0.2)) concept_set.insert(1);
    if (g.chance(0.15)) concept_set.insert(2);
    for (auto n = g.pick(3); n > 0; --n) concept_set.insert(static_cast<long long>(g.pick(sz.concepts)));
    json concepts = json::array();
    for (long long c : concept_set) {
      concepts.push_back({{"id", oa('C', kConceptBase + c)},
                          {"level", concept_level[static_cast<std::size_t>(c)]},
                          {"score", 0.5}});
      info.concepts.push_back(c);
    }
    triples += static_cast<long long>(concept_set.size());
    r["concepts"] = concepts;

    // Authorships with distinct authors.
    auto chosen = g.distinct_sample(all_authors, 1 + g.pick(4));
    json authorships = json::array();
    for (std::size_t k = 0; k < chosen.size(); ++k) {
      const char* pos = k == 0 ? "first" : k + 1 == chosen.size() ? "last" : "middle";
      auto insts = g.distinct_sample(all_institutions, g.pick(3));
      json inst_arr = json::array();
      for (long long i : insts) inst_arr.push_back({{"id", oa('I', kInstitutionBase + i)}});
      authorships.push_back({{"author_position", pos},
                             {"author", {{"id", oa('A', kAuthorBase + chosen[k])}}},
                             {"institutions", inst_arr}});
      triples += 4 + static_cast<long long>(insts.size());
      info.authors.push_back(chosen[k]);
    }
    r["authorships"] = authorships;

    if (g.chance(0.8)) {
      r["primary_location"] = {
          {"source", {{"id", oa('S', kSourceBase + static_cast<long long>(g.pick(sz.sources)))}}}};
      ++triples;
    } else {
      r["primary_location"] = nullptr;
    }
    if (g.chance(0.5)) {
      r["license"] = g.chance(0.5) ? "cc-by" : "cc0";
      ++triples;
    }
    triples += g.counts_by_year(r, false);
    works.push_back(std::move(info));
    add(EntityKind::Work, std::move(r), triples, ec);
  }

  // ---- write ----
  try {
    if (fs::exists(out / "data")) fs::remove_all(out / "data");
    for (auto kind : kAllKinds) write_kind(out, kind, latest[kind], older[kind], cfg.records_per_part);
  } catch (const fs::filesystem_error& e) {
    throw Error("IoFailure", e.what());
  }
  for (auto kind : kAllKinds) {
    truth.triple_total += truth.triple_counts[kind];
    truth.records_written += static_cast<long long>(latest[kind].size() + older[kind].size());
  }

  // ---- expected query answers ----
  std::map<std::tuple<std::string, long long, std::string>, std::string> rows;
  for (const auto& w : works) {
    if (w.title.empty() || std::find(w.concepts.begin(), w.concepts.end(), 0) == w.concepts.end()) continue;
    const auto& name = authors[static_cast<std::size_t>(w.authors.front())].name;
    auto iri = soa_iri("work", 'W', kWorkBase + w.number);
    auto [it, inserted] = rows.try_emplace({w.title, w.cited, name}, iri);
    if (!inserted && iri < it->second) it->second = iri;
  }
  for (const auto& [key, iri] : rows)
    truth.top_cited.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), iri});
  std::sort(truth.top_cited.begin(), truth.top_cited.end(), [](const TopCitedRow& a, const TopCitedRow& b) {
    if (a.cited_by_count != b.cited_by_count) return a.cited_by_count > b.cited_by_count;
    if (a.title != b.title) return a.title < b.title;
    if (a.work != b.work) return a.work < b.work;
    return a.first_author_name < b.first_author_name;
  });
  if (truth.top_cited.size() > kTopCitedLimit) truth.top_cited.resize(kTopCitedLimit);

  auto labels = trend_concepts();
  for (const auto& l : labels)
    for (int y = kTrendYears.first; y <= kTrendYears.last; ++y) truth.trend[{l, y}] = 0;
  for (const auto& w : works) {
    bool at_kit = std::any_of(w.authors.begin(), w.authors.end(), [&](long long a) {
      return authors[static_cast<std::size_t>(a)].institution == 0;
    });
    if (!at_kit || w.year < kTrendYears.first || w.year > kTrendYears.last) continue;
    for (long long c = 0; c < 3; ++c)
      if (std::find(w.concepts.begin(), w.concepts.end(), c) != w.concepts.end())
        ++truth.trend[{labels[static_cast<std::size_t>(c)], w.year}];
  }

  auto ranked = [](const std::map<std::string, long long>& m) {
    std::vector<std::pair<std::string, long long>> v(m.begin(), m.end());
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
      return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
    return v;
  };
  truth.institutions_by_country = ranked(countries);
  truth.institution_types = ranked(types);

  std::ofstream gt(out / "ground_truth.json", std::ios::binary | std::ios::trunc);
  if (!gt) throw Error("IoFailure", "cannot write " + (out / "ground_truth.json").string());
  gt << to_json(truth).dump(2) << '\n';
  if (!gt) throw Error("IoFailure", "cannot write " + (out / "ground_truth.json").string());
  return truth;
}

json to_json(const GroundTruth& t) {
  json sizes = json::object(), counts = json::object(), triples = json::object();
  for (auto kind : kAllKinds) {
    std::string k(plural(kind));
    sizes[k] = t.config.sizes.of(kind);
    auto c = t.entity_counts.find(kind);
    counts[std::string(segment(kind))] = c == t.entity_counts.end() ? 0 : c->second;
    auto tc = t.triple_counts.find(kind);
    triples[std::string(segment(kind))] = tc == t.triple_counts.end() ? 0 : tc->second;
  }
  auto pairs = [](const std::vector<std::pair<std::string, long long>>& v, const char* key) {
    json a = json::array();
    for (const auto& [name, n] : v) a.push_back({{key, name}, {"count", n}});
    return a;
  };
  json trend_counts = json::object();
  for (const auto& [key, n] : t.trend) trend_counts[key.first][std::to_string(key.second)] = n;
  return {{"seed", t.config.seed},
          {"sizes", sizes},
          {"edge_case_rate", t.config.edge_case_rate},
          {"records_per_part", t.config.records_per_part},
          {"entity_counts", counts},
          {"triple_counts", triples},
          {"triple_total", t.triple_total},
          {"superseded_records", t.superseded_records},
          {"dangling_references", t.dangling_references},
          {"records_written", t.records_written},
          {"records_with_edge_case", t.records_with_edge_case},
          {"edge_cases", t.edge_cases},
          {"top_cited", {{"concept", kTopCitedConcept}, {"limit", kTopCitedLimit}, {"rows", to_json(t.top_cited)}}},
          {"trend",
           {{"institution", kTrendInstitution},
            {"concepts", trend_concepts()},
            {"years", {kTrendYears.first, kTrendYears.last}},
            {"counts", trend_counts}}},
          {"institutions_by_country", pairs(t.institutions_by_country, "country_code")},
          {"institution_types", pairs(t.institution_types, "type")}};
}

GroundTruth ground_truth_from_json(const json& j) {
  GroundTruth t;
  t.config.seed = j.at("seed").get<std::uint64_t>();
  t.config.edge_case_rate = j.at("edge_case_rate").get<double>();
  t.config.records_per_part = j.at("records_per_part").get<long long>();
  for (auto kind : kAllKinds) {
    t.config.sizes.of(kind) = j.at("sizes").at(std::string(plural(kind))).get<long long>();
    t.entity_counts[kind] = j.at("entity_counts").at(std::string(segment(kind))).get<long long>();
    t.triple_counts[kind] = j.at("triple_counts").at(std::string(segment(kind))).get<long long>();
  }
  t.triple_total = j.at("triple_total").get<long long>();
  t.superseded_records = j.at("superseded_records").get<long long>();
  t.dangling_references = j.at("dangling_references").get<long long>();
  t.records_written = j.at("records_written").get<long long>();
  t.records_with_edge_case = j.at("records_with_edge_case").get<long long>();
  t.edge_cases = j.at("edge_cases").get<std::map<std::string, long long>>();
  for (const auto& r : j.at("top_cited").at("rows"))
    t.top_cited.push_back({r.at("paperTitle").get<std::string>(), r.at("citedByCount").get<long long>(),
                           r.at("firstAuthorName").get<std::string>(), r.at("paper").get<std::string>()});
  for (const auto& [label, years] : j.at("trend").at("counts").items())
    for (const auto& [year, n] : years.items()) t.trend[{label, std::stoi(year)}] = n.get<long long>();
  for (const auto& e : j.at("institutions_by_country"))
    t.institutions_by_country.emplace_back(e.at("country_code").get<std::string>(), e.at("count").get<long long>());
  for (const auto& e : j.at("institution_types"))
    t.institution_types.emplace_back(e.at("type").get<std::string>(), e.at("count").get<long long>());
  return t;
}

GroundTruth read_ground_truth(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("IoFailure", "cannot read " + path.string());
  return ground_truth_from_json(json::parse(in));
}

}  // namespace soa
