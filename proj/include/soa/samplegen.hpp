#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "soa/model.hpp"
#include "soa/queries.hpp"

namespace soa {

struct SampleSizes {
  long long works = 1000;
  long long authors = 300;
  long long sources = 40;
  long long institutions = 40;
  long long concepts = 60;
  long long publishers = 10;

  long long& of(EntityKind kind);
  long long of(EntityKind kind) const;
};

struct SampleConfig {
  std::uint64_t seed = 7;
  SampleSizes sizes;
  double edge_case_rate = 0.1;  // probability that a record carries an edge case
  long long records_per_part = 250;
};

inline constexpr const char* kLatestDate = "2023-05-01";
inline constexpr const char* kOlderDate = "2023-01-15";
inline constexpr const char* kTrendInstitution = "Karlsruhe Institute of Technology";
inline constexpr const char* kTopCitedConcept = "Semantic Web";
inline constexpr std::size_t kTopCitedLimit = 100;
std::vector<std::string> trend_concepts();
inline constexpr YearRange kTrendYears{2012, 2023};

/// Expected outcomes of converting and querying a generated snapshot, derived
/// from the generator's own record model.
struct GroundTruth {
  SampleConfig config;
  std::map<EntityKind, long long> entity_counts;
  std::map<EntityKind, long long> triple_counts;
  long long triple_total = 0;
  long long superseded_records = 0;
  long long dangling_references = 0;  // cito:cites statements to works not in the sample
  long long records_written = 0;      // lines over all part files
  long long records_with_edge_case = 0;
  std::map<std::string, long long> edge_cases;
  std::vector<TopCitedRow> top_cited;  // kTopCitedConcept, kTopCitedLimit
  TrendTable trend;                    // kTrendInstitution, trend_concepts(), kTrendYears
  std::vector<std::pair<std::string, long long>> institutions_by_country;
  std::vector<std::pair<std::string, long long>> institution_types;
};

/// Writes `<out>/data/<plural>/updated_date=<date>/part_NNN.gz` and
/// `<out>/ground_truth.json`. Output bytes depend only on the config.
/// Throws Error("InvalidConfig") when any size is below 1 (concepts below 4)
/// and Error("IoFailure").
GroundTruth generate_sample(const std::filesystem::path& out, const SampleConfig& config);

nlohmann::json to_json(const GroundTruth& truth);
GroundTruth ground_truth_from_json(const nlohmann::json& j);
GroundTruth read_ground_truth(const std::filesystem::path& path);

}  // namespace soa
