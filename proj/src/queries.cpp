#include "soa/queries.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <set>
#include <sstream>

#include "soa/vocab.hpp"

namespace soa {

namespace {

using vocab::term;

PatternTerm c(Iri iri) { return Term{std::move(iri)}; }
PatternTerm lit(std::string s) { return Term{Literal(std::move(s))}; }

const std::string& lexical_of(const Term& t) {
  if (const auto* l = std::get_if<Literal>(&t)) return l->lexical();
  return std::get<Iri>(t).str();
}

std::optional<long long> integer_of(const Term& t) {
  const auto* l = std::get_if<Literal>(&t);
  if (!l) return std::nullopt;
  const auto& s = l->lexical();
  const char* b = s.data();
  const char* e = s.data() + s.size();
  if (b != e && *b == '+') ++b;
  long long v = 0;
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc{} || ptr != e) return std::nullopt;
  return v;
}

bool by_count_then_key(const std::pair<std::string, long long>& a, const std::pair<std::string, long long>& b) {
  if (a.second != b.second) return a.second > b.second;
  return a.first < b.first;
}

}  // namespace

std::vector<TopCitedRow> query_top_cited_by_concept(const TripleIndex& index, const std::string& label,
                                                    std::size_t limit) {
  const Pattern bgp[] = {
      {var("paper"), c(term(vocab::kDcterms, "title")), var("paperTitle")},
      {var("paper"), c(term(vocab::kSoa, "hasConcept")), var("Concept")},
      {var("Concept"), c(term(vocab::kSkos, "prefLabel")), lit(label)},
      {var("paper"), c(term(vocab::kSoa, "citedByCount")), var("citedByCount")},
      {var("paper"), c(term(vocab::kSoa, "hasAuthorPosition")), var("authorPosition")},
      {var("authorPosition"), c(term(vocab::kSoa, "position")), lit("first")},
      {var("authorPosition"), c(term(vocab::kSoa, "hasAuthor")), var("firstAuthor")},
      {var("firstAuthor"), c(term(vocab::kFoaf, "name")), var("firstAuthorName")},
  };
  auto sol = match_ids(index, bgp);
  if (sol.rows.empty()) return {};
  auto paper = sol.column("paper");
  auto title = sol.column("paperTitle");
  auto count = sol.column("citedByCount");
  auto name = sol.column("firstAuthorName");

  // DISTINCT over the projected terms; the representative work is the
  // smallest IRI among those yielding the row.
  std::map<std::array<TermId, 3>, std::string> distinct;
  for (const auto& row : sol.rows) {
    const auto& iri = std::get<Iri>(index.term(row[paper])).str();
    auto [it, inserted] = distinct.try_emplace({row[title], row[count], row[name]}, iri);
    if (!inserted && iri < it->second) it->second = iri;
  }

  std::vector<TopCitedRow> rows;
  rows.reserve(distinct.size());
  for (const auto& [key, work] : distinct) {
    TopCitedRow r;
    r.title = lexical_of(index.term(key[0]));
    r.cited_by_count = integer_of(index.term(key[1])).value_or(0);
    r.first_author_name = lexical_of(index.term(key[2]));
    r.work = work;
    rows.push_back(std::move(r));
  }
  std::sort(rows.begin(), rows.end(), [](const TopCitedRow& a, const TopCitedRow& b) {
    if (a.cited_by_count != b.cited_by_count) return a.cited_by_count > b.cited_by_count;
    if (a.title != b.title) return a.title < b.title;
    if (a.work != b.work) return a.work < b.work;
    return a.first_author_name < b.first_author_name;
  });
  if (rows.size() > limit) rows.resize(limit);
  return rows;
}

TrendTable query_trend(const TripleIndex& index, const std::string& institution,
                       const std::vector<std::string>& concept_labels, YearRange years) {
  TrendTable table;
  for (const auto& label : concept_labels)
    for (int y = years.first; y <= years.last; ++y) table[{label, y}] = 0;

  for (const auto& label : concept_labels) {
    const Pattern bgp[] = {
        {var("inst"), c(term(vocab::kFoaf, "name")), lit(institution)},
        {var("author"), c(term(vocab::kOrg, "memberOf")), var("inst")},
        {var("ap"), c(term(vocab::kSoa, "hasAuthor")), var("author")},
        {var("work"), c(term(vocab::kSoa, "hasAuthorPosition")), var("ap")},
        {var("work"), c(term(vocab::kSoa, "hasConcept")), var("concept")},
        {var("concept"), c(term(vocab::kSkos, "prefLabel")), lit(label)},
        {var("work"), c(term(vocab::kFabio, "hasPublicationYear")), var("year")},
    };
    auto sol = match_ids(index, bgp);
    if (sol.rows.empty()) continue;
    auto work = sol.column("work");
    auto year = sol.column("year");
    std::set<std::pair<TermId, int>> seen;
    for (const auto& row : sol.rows) {
      auto y = integer_of(index.term(row[year]));
      if (!y || *y < years.first || *y > years.last) continue;
      if (seen.emplace(row[work], static_cast<int>(*y)).second) ++table[{label, static_cast<int>(*y)}];
    }
  }
  return table;
}

StatsReport report_stats(const TripleIndex& index) {
  StatsReport report;
  report.statements = static_cast<long long>(index.size());
  auto type = index.id_of(vocab::rdf_type());
  for (auto kind : kAllKinds) {
    auto cls = index.id_of(vocab::class_of(kind));
    report.entity_counts[kind] = (type && cls) ? static_cast<long long>(index.count(std::nullopt, type, cls)) : 0;
  }

  auto histogram = [&](const Iri& predicate) {
    std::map<std::string, long long> counts;
    auto cls = index.id_of(vocab::class_of(EntityKind::Institution));
    auto pred = index.id_of(predicate);
    if (!type || !cls || !pred) return std::vector<std::pair<std::string, long long>>{};
    index.scan(std::nullopt, type, cls, [&](const IdTriple& t) {
      std::set<TermId> values;
      index.scan(t.s, pred, std::nullopt, [&](const IdTriple& v) { values.insert(v.o); });
      for (auto v : values) ++counts[lexical_of(index.term(v))];
    });
    std::vector<std::pair<std::string, long long>> out(counts.begin(), counts.end());
    std::sort(out.begin(), out.end(), by_count_then_key);
    return out;
  };
  report.institutions_by_country = histogram(term(vocab::kSoa, "countryCode"));
  report.institution_types = histogram(term(vocab::kSoa, "rorType"));
  return report;
}

const std::map<EntityKind, long long>& reference_entity_counts() {
  static const std::map<EntityKind, long long> counts = {
      {EntityKind::Work, 249'450'604},  {EntityKind::Author, 135'360'159},   {EntityKind::Source, 226'413},
      {EntityKind::Institution, 108'618}, {EntityKind::Concept, 65'073}, {EntityKind::Publisher, 7'017},
  };
  return counts;
}

nlohmann::json to_json(const StatsReport& report) {
  nlohmann::json counts = nlohmann::json::object();
  nlohmann::json reference = nlohmann::json::object();
  for (auto kind : kAllKinds) {
    std::string key(segment(kind));
    auto it = report.entity_counts.find(kind);
    counts[key] = it == report.entity_counts.end() ? 0 : it->second;
    reference[key] = reference_entity_counts().at(kind);
  }
  auto pairs = [](const std::vector<std::pair<std::string, long long>>& v, const char* k) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& [name, n] : v) a.push_back({{k, name}, {"count", n}});
    return a;
  };
  return {{"entity_counts", counts},
          {"institutions_by_country", pairs(report.institutions_by_country, "country_code")},
          {"institution_types", pairs(report.institution_types, "type")},
          {"statements", report.statements},
          {"reference_entity_counts", reference}};
}

namespace {

std::string grouped(long long v) {
  auto digits = std::to_string(v < 0 ? -v : v);
  std::string out;
  int n = 0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    if (n && n % 3 == 0) out.push_back(',');
    out.push_back(*it);
    ++n;
  }
  if (v < 0) out.push_back('-');
  return {out.rbegin(), out.rend()};
}

void table(std::ostringstream& os, const std::string& title, const std::vector<std::vector<std::string>>& rows) {
  os << title << '\n';
  std::vector<std::size_t> width;
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (width.size() <= i) width.push_back(0);
      width[i] = std::max(width[i], r[i].size());
    }
  for (const auto& r : rows) {
    os << ' ';
    for (std::size_t i = 0; i < r.size(); ++i) {
      // First column left-aligned, numbers right-aligned.
      std::string pad(width[i] - r[i].size(), ' ');
      os << ' ' << (i == 0 ? r[i] + pad : pad + r[i]);
    }
    os << '\n';
  }
  os << '\n';
}

}  // namespace

std::string to_text(const StatsReport& report) {
  std::ostringstream os;
  std::vector<std::vector<std::string>> kinds{{"kind", "instances", "full dataset"}};
  for (auto kind : kAllKinds) {
    auto it = report.entity_counts.find(kind);
    kinds.push_back({std::string(segment(kind)), grouped(it == report.entity_counts.end() ? 0 : it->second),
                     grouped(reference_entity_counts().at(kind))});
  }
  table(os, "Entities", kinds);

  std::vector<std::vector<std::string>> countries{{"country", "institutions"}};
  for (const auto& [code, n] : report.institutions_by_country) countries.push_back({code, grouped(n)});
  table(os, "Institutions by country", countries);

  std::vector<std::vector<std::string>> types{{"type", "institutions"}};
  for (const auto& [t, n] : report.institution_types) types.push_back({t, grouped(n)});
  table(os, "Institution types", types);

  os << "Statements: " << grouped(report.statements) << '\n';
  return os.str();
}

nlohmann::json to_json(const std::vector<TopCitedRow>& rows) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& r : rows)
    a.push_back({{"paperTitle", r.title},
                 {"citedByCount", r.cited_by_count},
                 {"firstAuthorName", r.first_author_name},
                 {"paper", r.work}});
  return a;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

}  // namespace

std::string to_csv(const std::vector<TopCitedRow>& rows) {
  std::string out = "paperTitle,citedByCount,firstAuthorName,paper\r\n";
  for (const auto& r : rows)
    out += csv_field(r.title) + "," + std::to_string(r.cited_by_count) + "," + csv_field(r.first_author_name) + "," +
           csv_field(r.work) + "\r\n";
  return out;
}

nlohmann::json to_json(const TrendTable& table) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [key, n] : table) out[key.first][std::to_string(key.second)] = n;
  return out;
}

}  // namespace soa
