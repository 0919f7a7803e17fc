#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "soa/model.hpp"
#include "soa/triple_index.hpp"

namespace soa {

struct TopCitedRow {
  std::string title;
  long long cited_by_count = 0;
  std::string first_author_name;
  std::string work;  // smallest work IRI producing this row
  auto operator<=>(const TopCitedRow&) const = default;
};

/// Distinct (title, count, first author name) rows of works tagged with the
/// concept labelled `label`. Order: count descending, title, work IRI, then
/// author name ascending. At most `limit` rows.
std::vector<TopCitedRow> query_top_cited_by_concept(const TripleIndex& index, const std::string& label,
                                                    std::size_t limit);

struct YearRange {
  int first = 0;
  int last = 0;  // inclusive
};

/// (concept label, year) -> number of distinct works with at least one author
/// who is org:memberOf an institution whose foaf:name equals `institution`.
/// Every (label, year) of the range is present, zero when nothing matches.
using TrendTable = std::map<std::pair<std::string, int>, long long>;
TrendTable query_trend(const TripleIndex& index, const std::string& institution,
                       const std::vector<std::string>& concept_labels, YearRange years);

struct StatsReport {
  std::map<EntityKind, long long> entity_counts;
  std::vector<std::pair<std::string, long long>> institutions_by_country;  // descending count, then code
  std::vector<std::pair<std::string, long long>> institution_types;        // descending count, then type
  long long statements = 0;
};

StatsReport report_stats(const TripleIndex& index);

nlohmann::json to_json(const StatsReport& report);
/// Aligned plain-text tables followed by the full-scale reference counts.
std::string to_text(const StatsReport& report);

/// Instance counts of the full published dataset, for side-by-side display.
const std::map<EntityKind, long long>& reference_entity_counts();

nlohmann::json to_json(const std::vector<TopCitedRow>& rows);
std::string to_csv(const std::vector<TopCitedRow>& rows);
nlohmann::json to_json(const TrendTable& table);

}  // namespace soa
