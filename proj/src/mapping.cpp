#include "soa/mapping.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <set>

#include "soa/vocab.hpp"

namespace soa {

using nlohmann::json;
using namespace vocab;

namespace {

std::vector<Rule::Step> parse_path(const std::string& path) {
  std::vector<Rule::Step> steps;
  std::size_t start = 0;
  while (start <= path.size()) {
    auto dot = path.find('.', start);
    std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    bool expand = key.ends_with("[]");
    if (expand) key.resize(key.size() - 2);
    steps.push_back({key, expand});
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  return steps;
}

void resolve(const json& node, const std::vector<Rule::Step>& steps, std::size_t i, std::vector<const json*>& out) {
  if (node.is_null()) return;
  if (i == steps.size()) {
    out.push_back(&node);
    return;
  }
  if (!node.is_object()) return;
  auto it = node.find(steps[i].key);
  if (it == node.end() || it->is_null()) return;
  if (steps[i].expand) {
    if (!it->is_array()) return;
    for (const auto& el : *it) resolve(el, steps, i + 1, out);
  } else {
    resolve(*it, steps, i + 1, out);
  }
}

Rule literal(std::string id, std::string path, std::string_view ns, std::string_view local,
             ValueType value = ValueType::String, LiteralContext context = LiteralContext::Other) {
  return Rule{.id = std::move(id), .path = std::move(path), .predicate = term(ns, local),
              .object = ObjectKind::Literal, .value = value, .context = context};
}

Rule ref(std::string id, std::string path, std::string_view ns, std::string_view local,
         std::optional<EntityKind> kind) {
  return Rule{.id = std::move(id), .path = std::move(path), .predicate = term(ns, local),
              .object = ObjectKind::EntityRef, .ref_kind = kind};
}

Rule aux(std::string id, std::string path, std::string_view local, int index) {
  return Rule{.id = std::move(id), .path = std::move(path), .predicate = term(kSoa, local),
              .object = ObjectKind::Aux, .aux = index};
}

Rule external(std::string id, std::string path, std::string_view ns, std::string_view local) {
  return Rule{.id = std::move(id), .path = std::move(path), .predicate = term(ns, local), .object = ObjectKind::Iri};
}

MappingTable build_standard() {
  MappingTable t;
  constexpr int kAuthorPosition = 0, kCountsByYear = 1, kGeo = 2;
  t.aux_nodes.push_back({AuxKind::AuthorPosition, term(kClass, "AuthorPosition"), "author", {}});
  t.aux_nodes.push_back({AuxKind::CountsByYear, term(kClass, "CountsByYear"), "year", {}});
  t.aux_nodes.push_back({AuxKind::Geo, term(kClass, "Geo"), "", {}});

  t.add_aux_rule(kAuthorPosition, literal("authorposition.position", "author_position", kSoa, "position", ValueType::Position));
  t.add_aux_rule(kAuthorPosition, ref("authorposition.author", "author", kSoa, "hasAuthor", EntityKind::Author));
  t.add_aux_rule(kAuthorPosition,
                 ref("authorposition.organization", "institutions[]", kSoa, "hasOrganization", EntityKind::Institution));

  t.add_aux_rule(kCountsByYear, literal("countsbyyear.year", "year", kSoa, "year", ValueType::Integer));
  t.add_aux_rule(kCountsByYear, literal("countsbyyear.works", "works_count", kSoa, "worksCount", ValueType::Integer));
  t.add_aux_rule(kCountsByYear, literal("countsbyyear.cited", "cited_by_count", kSoa, "citedByCount", ValueType::Integer));

  t.add_aux_rule(kGeo, literal("geo.city", "city", kGn, "name", ValueType::String, LiteralContext::Name));
  t.add_aux_rule(kGeo, literal("geo.country", "country_code", kGn, "countryCode"));
  t.add_aux_rule(kGeo, literal("geo.lat", "latitude", kGn, "lat", ValueType::Double));
  t.add_aux_rule(kGeo, literal("geo.long", "longitude", kGn, "long", ValueType::Double));

  using K = EntityKind;
  t.add(K::Work, literal("work.title", "display_name", kDcterms, "title", ValueType::String, LiteralContext::Title));
  t.add(K::Work, Rule{.id = "work.abstract", .path = "abstract_inverted_index",
                      .predicate = term(kDcterms, "abstract"), .object = ObjectKind::Abstract});
  t.add(K::Work, literal("work.created", "publication_date", kDcterms, "created", ValueType::Date));
  t.add(K::Work, literal("work.year", "publication_year", kFabio, "hasPublicationYear", ValueType::Year));
  t.add(K::Work, literal("work.citedByCount", "cited_by_count", kSoa, "citedByCount", ValueType::Integer));
  t.add(K::Work, literal("work.pmid", "ids.pmid", kFabio, "hasPubMedId", ValueType::String, LiteralContext::Url));
  t.add(K::Work, literal("work.doi", "ids.doi", kDatacite, "doi", ValueType::String, LiteralContext::Url));
  t.add(K::Work, ref("work.cites", "referenced_works[]", kCito, "cites", K::Work));
  t.add(K::Work, ref("work.concept", "concepts[]", kSoa, "hasConcept", K::Concept));
  t.add(K::Work, aux("work.authorPosition", "authorships[]", "hasAuthorPosition", kAuthorPosition));
  t.add(K::Work, ref("work.hostSource", "primary_location.source", kSoa, "hasHostSource", K::Source));
  t.add(K::Work, literal("work.license", "license", kDcterms, "license"));
  t.add(K::Work, aux("work.countsByYear", "counts_by_year[]", "countsByYear", kCountsByYear));

  t.add(K::Author, literal("author.name", "display_name", kFoaf, "name", ValueType::String, LiteralContext::Name));
  t.add(K::Author, literal("author.worksCount", "works_count", kSoa, "worksCount", ValueType::Integer));
  t.add(K::Author, literal("author.citedByCount", "cited_by_count", kSoa, "citedByCount", ValueType::Integer));
  t.add(K::Author, ref("author.memberOf", "last_known_institution", kOrg, "memberOf", K::Institution));
  t.add(K::Author, external("author.sameAs", "ids.wikidata", kOwl, "sameAs"));
  t.add(K::Author, aux("author.countsByYear", "counts_by_year[]", "countsByYear", kCountsByYear));

  t.add(K::Concept, literal("concept.label", "display_name", kSkos, "prefLabel", ValueType::String, LiteralContext::Name));
  Rule broader = ref("concept.broader", "ancestors[]", kSkos, "broader", K::Concept);
  broader.broader_only = true;
  t.add(K::Concept, std::move(broader));
  t.add(K::Concept, ref("concept.related", "related_concepts[]", kSkos, "related", K::Concept));
  t.add(K::Concept, literal("concept.note", "description", kSkos, "note"));
  t.add(K::Concept, external("concept.sameAs", "wikidata", kOwl, "sameAs"));
  t.add(K::Concept, literal("concept.level", "level", kSoa, "level", ValueType::Integer));
  t.add(K::Concept, aux("concept.countsByYear", "counts_by_year[]", "countsByYear", kCountsByYear));

  t.add(K::Institution, literal("institution.name", "display_name", kFoaf, "name", ValueType::String, LiteralContext::Name));
  t.add(K::Institution, literal("institution.country", "country_code", kSoa, "countryCode"));
  t.add(K::Institution, literal("institution.type", "type", kSoa, "rorType"));
  t.add(K::Institution, aux("institution.geo", "geo", "hasGeo", kGeo));
  t.add(K::Institution, literal("institution.acronym", "display_name_acronyms[]", kDbp, "acronym", ValueType::String, LiteralContext::Name));
  t.add(K::Institution, aux("institution.countsByYear", "counts_by_year[]", "countsByYear", kCountsByYear));

  t.add(K::Source, literal("source.name", "display_name", kFoaf, "name", ValueType::String, LiteralContext::Name));
  t.add(K::Source, literal("source.issn", "issn[]", kPrism, "issn"));
  t.add(K::Source, ref("source.hostOrganization", "host_organization", kSoa, "hasHostOrganization", std::nullopt));
  t.add(K::Source, aux("source.countsByYear", "counts_by_year[]", "countsByYear", kCountsByYear));

  t.add(K::Publisher, literal("publisher.name", "display_name", kFoaf, "name", ValueType::String, LiteralContext::Name));
  t.add(K::Publisher, literal("publisher.country", "country_codes[]", kDbp, "countryCode"));
  t.add(K::Publisher, aux("publisher.countsByYear", "counts_by_year[]", "countsByYear", kCountsByYear));
  return t;
}

std::optional<long long> as_integer(const json& v) {
  if (v.is_number_integer()) return v.get<long long>();
  if (v.is_number_unsigned()) {
    auto u = v.get<unsigned long long>();
    if (u <= static_cast<unsigned long long>(std::numeric_limits<long long>::max())) return static_cast<long long>(u);
  }
  return std::nullopt;
}

bool valid_date(const std::string& s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
  for (int i : {0, 1, 2, 3, 5, 6, 8, 9})
    if (s[i] < '0' || s[i] > '9') return false;
  int y = std::stoi(s.substr(0, 4)), m = std::stoi(s.substr(5, 2)), d = std::stoi(s.substr(8, 2));
  static constexpr int kDays[] = {31, 29, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (y < 1 || m < 1 || m > 12 || d < 1 || d > kDays[m - 1]) return false;
  bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
  return !(m == 2 && d == 29 && !leap);
}

std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  std::string s(buf, end);
  // xsd:double lexical forms need a mantissa digit around the exponent marker.
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

// Variant holding either a literal/IRI object or a failure reason.
struct Converted {
  std::optional<Term> term;
  std::string error;  // nonempty: diagnostic; empty with no term: skip silently
};

Converted convert_literal(const Rule& rule, const json& v) {
  switch (rule.value) {
    case ValueType::String: {
      if (!v.is_string()) return {std::nullopt, "expected a string"};
      std::string s = clean_literal(v.get_ref<const std::string&>(), rule.context);
      if (s.empty()) return {};
      return {Literal(std::move(s)), {}};
    }
    case ValueType::Integer: {
      auto n = as_integer(v);
      if (!n) return {std::nullopt, "nonnumeric count"};
      return {Literal(std::to_string(*n), xsd_integer()), {}};
    }
    case ValueType::Date: {
      if (!v.is_string() || !valid_date(v.get_ref<const std::string&>())) return {std::nullopt, "bad date"};
      return {Literal(v.get<std::string>(), term(kXsd, "date")), {}};
    }
    case ValueType::Year: {
      auto n = as_integer(v);
      if (!n || *n < 1 || *n > 9999) return {std::nullopt, "bad year"};
      std::string y = std::to_string(*n);
      y.insert(0, 4 - y.size(), '0');
      return {Literal(std::move(y), term(kXsd, "gYear")), {}};
    }
    case ValueType::Double: {
      if (!v.is_number()) return {std::nullopt, "nonnumeric value"};
      double d = v.get<double>();
      if (!std::isfinite(d)) return {std::nullopt, "non-finite value"};
      return {Literal(format_double(d), term(kXsd, "double")), {}};
    }
    case ValueType::Position: {
      if (!v.is_string()) return {std::nullopt, "expected a string"};
      const auto& s = v.get_ref<const std::string&>();
      if (s != "first" && s != "middle" && s != "last") return {std::nullopt, "unknown author position '" + s + "'"};
      return {Literal(s), {}};
    }
  }
  return {};
}

std::optional<EntityId> ref_of(const json& v) {
  const json* node = &v;
  if (v.is_object()) {
    auto it = v.find("id");
    if (it == v.end()) return std::nullopt;
    node = &*it;
  }
  if (!node->is_string()) return std::nullopt;
  try {
    return parse_entity_ref(node->get_ref<const std::string&>());
  } catch (const Error&) {
    return std::nullopt;
  }
}

class Mapper {
 public:
  Mapper(const MappingTable& table, EntityKind kind, const EntityId& id)
      : table_(table), graph_(graph_iri(kind)), owner_(id) {}

  MappingOutput out;

  void emit(const Iri& s, const Iri& p, Term o) {
    Quad q{s, p, std::move(o), graph_};
    if (seen_.insert(q.triple()).second) out.quads.push_back(std::move(q));
  }

  // Returns the number of values the rule produced.
  int apply(const Rule& rule, const Iri& subject, const json& root) {
    std::vector<const json*> values;
    resolve(root, rule.steps, 0, values);
    int produced = 0;
    std::optional<long long> subject_level;
    if (rule.broader_only) {
      auto it = root.find("level");
      if (it != root.end()) subject_level = as_integer(*it);
    }
    for (const json* v : values) {
      auto fail = [&](const std::string& reason) { out.diagnostics.push_back({rule.id, reason}); };
      switch (rule.object) {
        case ObjectKind::Literal: {
          auto c = convert_literal(rule, *v);
          if (!c.error.empty()) fail(c.error);
          if (!c.term) continue;
          emit(subject, rule.predicate, std::move(*c.term));
          break;
        }
        case ObjectKind::Iri: {
          if (!v->is_string()) {
            fail("expected an IRI string");
            continue;
          }
          auto checked = validate_iri_candidate(v->get_ref<const std::string&>());
          if (auto* rejected = std::get_if<RejectedIri>(&checked)) {
            fail("rejected IRI: " + std::string(describe(rejected->reason)));
            continue;
          }
          emit(subject, rule.predicate, std::get<Iri>(std::move(checked)));
          break;
        }
        case ObjectKind::EntityRef: {
          auto target = ref_of(*v);
          if (!target) {
            fail("malformed entity reference");
            continue;
          }
          if (rule.ref_kind && target->kind() != *rule.ref_kind) {
            fail("reference " + target->str() + " has the wrong entity kind");
            continue;
          }
          if (rule.broader_only) {
            std::optional<long long> level;
            if (v->is_object())
              if (auto it = v->find("level"); it != v->end()) level = as_integer(*it);
            if (!subject_level || !level || *level != *subject_level - 1) continue;
          }
          emit(subject, rule.predicate, mint_entity_iri(*target));
          break;
        }
        case ObjectKind::Abstract: {
          if (!v->is_object()) {
            fail("inverted index is not an object");
            continue;
          }
          InvertedAbstract index;
          bool ok = true;
          for (const auto& [token, positions] : v->items()) {
            if (!positions.is_array()) {
              ok = false;
              break;
            }
            auto& list = index[token];
            for (const auto& p : positions) {
              auto n = as_integer(p);
              if (!n || *n < 0) {
                ok = false;
                break;
              }
              list.push_back(*n);
            }
          }
          if (!ok) {
            fail("malformed inverted index");
            continue;
          }
          auto inverted = invert_abstract(index);
          for (const auto& d : inverted.duplicates)
            fail("DuplicatePosition " + std::to_string(d.position) + ": kept '" + d.kept + "', dropped '" + d.dropped + "'");
          std::string text = clean_literal(inverted.text, LiteralContext::Abstract);
          if (text.empty()) continue;
          emit(subject, rule.predicate, Literal(std::move(text)));
          break;
        }
        case ObjectKind::Aux: {
          if (!emit_aux(rule, subject, *v)) continue;
          break;
        }
      }
      ++produced;
    }
    return produced;
  }

 private:
  bool emit_aux(const Rule& rule, const Iri& subject, const json& element) {
    const AuxNodeSpec& spec = table_.aux_nodes.at(static_cast<std::size_t>(rule.aux));
    auto fail = [&](const std::string& reason) {
      out.diagnostics.push_back({rule.id, reason});
      return false;
    };
    if (!element.is_object()) return fail("expected an object");
    std::vector<std::string> parts{owner_.str()};
    if (!spec.part_path.empty()) {
      auto it = element.find(spec.part_path);
      if (it == element.end() || it->is_null()) return fail("missing '" + spec.part_path + "'");
      if (auto id = ref_of(*it)) {
        parts.push_back(id->str());
      } else if (auto n = as_integer(*it); n && *n >= 0) {
        parts.push_back(std::to_string(*n));
      } else {
        return fail("unusable '" + spec.part_path + "'");
      }
    }
    Iri node = mint_aux_iri(spec.kind, parts);
    emit(subject, rule.predicate, node);
    emit(node, rdf_type(), spec.type);
    for (const auto& r : spec.rules) apply(r, node, element);
    return true;
  }

  const MappingTable& table_;
  Iri graph_;
  EntityId owner_;
  std::set<Triple> seen_;
};

}  // namespace

void MappingTable::add(EntityKind kind, Rule rule) {
  rule.steps = parse_path(rule.path);
  rules[kind].push_back(std::move(rule));
}

void MappingTable::add_aux_rule(int aux, Rule rule) {
  rule.steps = parse_path(rule.path);
  aux_nodes.at(static_cast<std::size_t>(aux)).rules.push_back(std::move(rule));
}

const MappingTable& MappingTable::standard() {
  static const MappingTable table = build_standard();
  return table;
}

std::vector<Iri> MappingTable::predicates() const {
  std::vector<Iri> out{rdf_type()};
  auto add = [&](const Iri& p) {
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  };
  for (auto kind : kAllKinds) {
    auto it = rules.find(kind);
    if (it == rules.end()) continue;
    for (const auto& r : it->second) add(r.predicate);
  }
  for (const auto& a : aux_nodes)
    for (const auto& r : a.rules) add(r.predicate);
  return out;
}

MappingOutput map_entity(const RawEntityRecord& record, const MappingTable& table) {
  auto id = record_entity_id(record.fields);
  if (!id) throw Error("RejectedRecord", "missing or malformed \"id\"");
  if (id->kind() != record.kind)
    throw Error("RejectedRecord", id->str() + " is not a " + std::string(segment(record.kind)));

  Mapper m(table, record.kind, *id);
  Iri subject = mint_entity_iri(*id);
  m.emit(subject, rdf_type(), class_of(record.kind));
  if (auto it = table.rules.find(record.kind); it != table.rules.end()) {
    for (const auto& rule : it->second) {
      int produced = m.apply(rule, subject, record.fields);
      if (rule.required && produced == 0)
        throw Error("RejectedRecord", id->str() + " lacks required field '" + rule.path + "'");
    }
  }
  return std::move(m.out);
}

namespace {

struct PropertyInfo {
  bool object = false;
  bool literal = false;
  std::set<Iri> domains;
  std::set<Iri> ranges;
};

Iri datatype_of(ValueType v) {
  switch (v) {
    case ValueType::String: return xsd_string();
    case ValueType::Integer: return xsd_integer();
    case ValueType::Date: return term(kXsd, "date");
    case ValueType::Year: return term(kXsd, "gYear");
    case ValueType::Double: return term(kXsd, "double");
    case ValueType::Position: return xsd_string();
  }
  return xsd_string();
}

void collect(const MappingTable& table, const Rule& r, const Iri& domain, std::map<Iri, PropertyInfo>& props) {
  auto& info = props[r.predicate];
  info.domains.insert(domain);
  switch (r.object) {
    case ObjectKind::Literal:
      info.literal = true;
      info.ranges.insert(datatype_of(r.value));
      break;
    case ObjectKind::Abstract:
      info.literal = true;
      info.ranges.insert(xsd_string());
      break;
    case ObjectKind::Iri:
      info.object = true;
      info.ranges.insert(term(kRdfs, "Resource"));
      break;
    case ObjectKind::EntityRef:
      info.object = true;
      info.ranges.insert(r.ref_kind ? class_of(*r.ref_kind) : term(kRdfs, "Resource"));
      break;
    case ObjectKind::Aux:
      info.object = true;
      info.ranges.insert(table.aux_nodes.at(static_cast<std::size_t>(r.aux)).type);
      break;
  }
}

}  // namespace

std::vector<Triple> emit_ontology(const MappingTable& table) {
  std::vector<Triple> out;
  const Iri owl_class = term(kOwl, "Class");
  const Iri sub_class = term(kRdfs, "subClassOf");
  const Iri label = term(kRdfs, "label");
  const Iri domain = term(kRdfs, "domain");
  const Iri range = term(kRdfs, "range");
  const Iri resource = term(kRdfs, "Resource");

  Iri ontology = term(kBase, "ontology/");
  out.push_back({ontology, rdf_type(), term(kOwl, "Ontology")});
  out.push_back({ontology, label, Literal("SemOpenAlex ontology")});
  out.push_back({ontology, term(kDcterms, "license"), term(kCc0, "")});

  struct ClassDecl {
    Iri iri;
    std::optional<Iri> parent;
  };
  std::vector<ClassDecl> classes = {
      {class_of(EntityKind::Work), term(kFabio, "Expression")},
      {class_of(EntityKind::Author), term(kFoaf, "Agent")},
      {class_of(EntityKind::Source), std::nullopt},
      {class_of(EntityKind::Institution), term(kOrg, "Organization")},
      {class_of(EntityKind::Concept), std::nullopt},
      {class_of(EntityKind::Publisher), term(kFoaf, "Agent")},
  };
  for (const auto& a : table.aux_nodes) classes.push_back({a.type, std::nullopt});
  classes.back().parent = term(kGn, "Feature");  // Geo
  for (auto ext : {term(kFabio, "Expression"), term(kFoaf, "Agent"), term(kOrg, "Organization"), term(kGn, "Feature")})
    classes.push_back({ext, std::nullopt});

  for (const auto& c : classes) {
    out.push_back({c.iri, rdf_type(), owl_class});
    if (c.iri.str().starts_with(kClass))
      out.push_back({c.iri, label, Literal(c.iri.str().substr(kClass.size()))});
    if (c.parent) out.push_back({c.iri, sub_class, *c.parent});
  }

  std::map<Iri, PropertyInfo> props;
  for (auto kind : kAllKinds) {
    auto it = table.rules.find(kind);
    if (it == table.rules.end()) continue;
    for (const auto& r : it->second) collect(table, r, class_of(kind), props);
  }
  for (const auto& a : table.aux_nodes)
    for (const auto& r : a.rules) collect(table, r, a.type, props);

  out.push_back({rdf_type(), rdf_type(), term(kRdf, "Property")});
  out.push_back({rdf_type(), domain, resource});
  out.push_back({rdf_type(), range, term(kRdfs, "Class")});
  for (const auto& p : table.predicates()) {
    if (p == rdf_type()) continue;
    const auto& info = props.at(p);
    Iri kind = info.object && !info.literal ? term(kOwl, "ObjectProperty")
               : info.literal && !info.object ? term(kOwl, "DatatypeProperty")
                                              : term(kRdf, "Property");
    out.push_back({p, rdf_type(), kind});
    out.push_back({p, domain, info.domains.size() == 1 ? *info.domains.begin() : resource});
    Iri fallback = info.literal ? term(kRdfs, "Literal") : resource;
    out.push_back({p, range, info.ranges.size() == 1 ? *info.ranges.begin() : fallback});
  }
  return out;
}

std::vector<Triple> emit_void(const std::map<EntityKind, long long>& entity_counts, long long triple_total,
                              const VoidConfig& config) {
  std::vector<Triple> out;
  Iri dataset(config.dataset);
  auto integer = [](long long n) { return Literal(std::to_string(n), xsd_integer()); };
  long long entities = 0;
  for (const auto& [kind, n] : entity_counts) entities += n;

  out.push_back({dataset, rdf_type(), term(kVoid, "Dataset")});
  out.push_back({dataset, term(kDcterms, "title"), Literal("SemOpenAlex")});
  out.push_back({dataset, term(kDcterms, "license"), term(kCc0, "")});
  out.push_back({dataset, term(kVoid, "triples"), integer(triple_total)});
  out.push_back({dataset, term(kVoid, "entities"), integer(entities)});
  out.push_back({dataset, term(kVoid, "uriSpace"), Literal(std::string(kBase))});
  if (!config.sparql_endpoint.empty())
    out.push_back({dataset, term(kVoid, "sparqlEndpoint"), Iri(config.sparql_endpoint)});
  if (!config.data_dump.empty()) out.push_back({dataset, term(kVoid, "dataDump"), Iri(config.data_dump)});
  for (const auto& p : kPrefixes) out.push_back({dataset, term(kVoid, "vocabulary"), term(p.ns, "")});

  for (auto kind : kAllKinds) {
    Iri partition(std::string(kBase) + "void/partition/" + std::string(segment(kind)));
    auto it = entity_counts.find(kind);
    long long n = it == entity_counts.end() ? 0 : it->second;
    out.push_back({dataset, term(kVoid, "classPartition"), partition});
    out.push_back({partition, term(kVoid, "class"), class_of(kind)});
    out.push_back({partition, term(kVoid, "entities"), integer(n)});
  }
  return out;
}

}  // namespace soa
