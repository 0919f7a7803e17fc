#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "soa/rng.hpp"
#include "soa/triple_index.hpp"

namespace soa::embed {

enum class ModelKind { TransE, DistMult, ComplEx };

std::string_view name(ModelKind kind);
std::optional<ModelKind> parse_model_kind(std::string_view text);

struct HrtTriple {
  int h = 0, r = 0, t = 0;
  auto operator<=>(const HrtTriple&) const = default;
};

struct LabeledTriple {
  std::string h, r, t;
};

/// Dense entity and relation numbering plus a train/valid/test split. Every
/// entity and relation of valid and test also occurs in train.
struct IdTripleSet {
  std::vector<std::string> entities;  // sorted; index = id
  std::vector<std::string> relations;
  std::vector<HrtTriple> train, valid, test;
  long long moved_to_train = 0;  // valid/test triples relocated by the coverage rule

  int entity_count() const noexcept { return static_cast<int>(entities.size()); }
  int relation_count() const noexcept { return static_cast<int>(relations.size()); }
};

struct SplitRatios {
  double train = 0.8, valid = 0.1, test = 0.1;
};

/// Numbers entities and relations in sorted IRI order, shuffles the distinct
/// triples with `seed` and cuts floor(n*valid) valid and floor(n*test) test
/// triples, the rest being train. Throws Error("TooFewTriples") below 10.
IdTripleSet split_triples(std::vector<LabeledTriple> triples, SplitRatios ratios, std::uint64_t seed);

/// Statements whose object is an IRI (rdf:type included); literals are skipped.
IdTripleSet build_id_triples(const TripleIndex& index, SplitRatios ratios, std::uint64_t seed);

template <typename Scalar>
class EmbeddingModel {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  /// ComplEx requires an even `dim`: columns [0, dim/2) are real parts.
  EmbeddingModel(ModelKind kind, int entities, int relations, int dim);

  /// Uniform in [-6/sqrt(dim), 6/sqrt(dim)]; TransE entity rows are then
  /// scaled to unit length.
  void initialize(std::mt19937_64& rng);

  ModelKind kind() const noexcept { return kind_; }
  int dim() const noexcept { return dim_; }

  Scalar score(int h, int r, int t) const;
  /// Scores of (h, r, e) for every entity e.
  Vector tail_scores(int h, int r) const;
  /// Scores of (e, r, t) for every entity e.
  Vector head_scores(int r, int t) const;

  /// Adds `weight` * d score / d parameter for one triple.
  void score_gradient(int h, int r, int t, Scalar weight, Matrix& d_entities, Matrix& d_relations) const;

  /// Rescales TransE entity rows whose length differs from 1 by more than 1e-12.
  void renormalize(std::span<const int> rows);

  bool finite() const;

  Matrix entities;
  Matrix relations;

 private:
  ModelKind kind_;
  int dim_;
};

struct LossConfig {
  double margin = 1.0;  // TransE
  double l2 = 1e-4;     // DistMult, ComplEx
};

/// One positive and its corruptions.
struct Example {
  HrtTriple positive;
  std::vector<HrtTriple> negatives;
};

/// Mean over examples of the per-example loss. TransE: mean hinge
/// max(0, margin - s(pos) + s(neg)). DistMult/ComplEx: softplus(-s(pos)) plus
/// the mean softplus(s(neg)), plus l2 times the squared norms of the rows of
/// the positive.
template <typename Scalar>
Scalar batch_loss(const EmbeddingModel<Scalar>& model, std::span<const Example> batch, const LossConfig& cfg);

/// Analytic gradient of batch_loss. `d_entities`/`d_relations` are resized
/// and zeroed; `touched_*` receive the sorted rows with non-zero support.
template <typename Scalar>
void batch_gradient(const EmbeddingModel<Scalar>& model, std::span<const Example> batch, const LossConfig& cfg,
                    typename EmbeddingModel<Scalar>::Matrix& d_entities,
                    typename EmbeddingModel<Scalar>::Matrix& d_relations, std::vector<int>* touched_entities = nullptr,
                    std::vector<int>* touched_relations = nullptr);

struct TrainConfig {
  ModelKind kind = ModelKind::DistMult;
  int dim = 100;
  int batch_size = 16'000;
  int epochs = 3;
  double learning_rate = 1.0;
  double margin = 1.0;
  int negatives = 5;  // per positive
  double l2 = 1e-4;
  std::uint64_t seed = 7;
};

/// Throws Error("InvalidConfig") for non-positive sizes or rates.
void validate(const TrainConfig& cfg);

using Model = EmbeddingModel<double>;

/// Minibatch SGD over ids.train. Negatives replace the head or the tail
/// (fair coin) with a uniform entity. `epoch_loss` receives the mean
/// per-example loss of each epoch. Throws Error("NonFiniteLoss").
Model train(const IdTripleSet& ids, const TrainConfig& cfg, std::vector<double>* epoch_loss = nullptr);

struct EvalResult {
  double mrr_raw = 0, mrr_filtered = 0;
  double hits_at_1 = 0, hits_at_3 = 0, hits_at_10 = 0;  // filtered
  long long queries = 0;                                 // two per triple
};

using Scorer = std::function<double(int h, int r, int t)>;

/// Ranks the true tail among all entities (and the true head likewise):
/// rank = 1 + number of other candidates scoring at least as high. The
/// filtered rank skips candidates forming a known train/valid/test triple.
EvalResult evaluate_with(const IdTripleSet& ids, std::span<const HrtTriple> queries, const Scorer& scorer);

/// evaluate_with over ids.test using whole-matrix scoring.
EvalResult evaluate(const Model& model, const IdTripleSet& ids);
EvalResult evaluate(const Model& model, const IdTripleSet& ids, std::span<const HrtTriple> queries);

/// Expected filtered MRR of a scorer giving i.i.d. continuous scores: the mean
/// of H(C)/C over queries, C being the filtered candidate count.
double random_baseline_mrr(const IdTripleSet& ids, std::span<const HrtTriple> queries);

nlohmann::json to_json(const EvalResult& result);

/// One line per entity: IRI, then dim tab-separated values.
void write_vectors(std::ostream& out, const Model& model, const IdTripleSet& ids);

/// 200 entities in 40 groups of 5 with four relations: two peers in the same
/// group, two members of the next group, one member two groups ahead (the
/// composition of the previous relation with itself) and one peer-of-peer.
std::vector<LabeledTriple> toy_compositional_graph(std::uint64_t seed);

}  // namespace soa::embed
