#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "embed_oracle.hpp"
#include "soa/embed.hpp"
#include "soa/model.hpp"

using namespace soa::embed;

namespace {

std::vector<LabeledTriple> random_labeled(int entities, int relations, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> e(0, entities - 1), r(0, relations - 1);
  std::vector<LabeledTriple> out;
  for (int i = 0; i < n; ++i)
    out.push_back({"e" + std::to_string(e(rng)), "r" + std::to_string(r(rng)), "e" + std::to_string(e(rng))});
  return out;
}

std::vector<Example> random_batch(int entities, int relations, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> e(0, entities - 1), r(0, relations - 1);
  std::vector<Example> batch;
  for (int i = 0; i < 4; ++i) {
    Example ex{{e(rng), r(rng), e(rng)}, {}};
    for (int k = 0; k < 3; ++k) ex.negatives.push_back({e(rng), ex.positive.r, e(rng)});
    batch.push_back(ex);
  }
  return batch;
}

}  // namespace

TEST(Embed, ModelNames) {
  for (auto k : {ModelKind::TransE, ModelKind::DistMult, ModelKind::ComplEx})
    EXPECT_EQ(parse_model_kind(name(k)), k);
  EXPECT_FALSE(parse_model_kind("rescal"));
}

TEST(Embed, GradientMatchesFiniteDifferences) {
  for (auto kind : {ModelKind::TransE, ModelKind::DistMult, ModelKind::ComplEx}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      std::mt19937_64 rng(seed);
      Model model(kind, 12, 3, 8);
      model.initialize(rng);
      auto batch = random_batch(12, 3, rng);
      LossConfig cfg;
      cfg.margin = 50.0;  // keeps every hinge term active, away from its kink
      cfg.l2 = 0.01;
      double err = soa::testing::gradient_relative_error(model, batch, cfg);
      EXPECT_LE(err, 1e-4) << name(kind) << " seed " << seed;
    }
  }
}

TEST(Embed, InactiveHingeHasZeroGradient) {
  std::mt19937_64 rng(3);
  Model model(ModelKind::TransE, 6, 2, 4);
  model.initialize(rng);
  Example ex{{0, 0, 1}, {{2, 0, 3}}};
  LossConfig cfg;
  cfg.margin = -100.0;
  std::vector<Example> batch{ex};
  EXPECT_DOUBLE_EQ(batch_loss<double>(model, batch, cfg), 0.0);
  Model::Matrix dE, dR;
  batch_gradient<double>(model, batch, cfg, dE, dR);
  EXPECT_EQ(dE.norm(), 0.0);
  EXPECT_EQ(dR.norm(), 0.0);
}

TEST(Embed, ScoreVectorsAgreeWithPointScores) {
  for (auto kind : {ModelKind::TransE, ModelKind::DistMult, ModelKind::ComplEx}) {
    std::mt19937_64 rng(11);
    Model model(kind, 9, 2, 6);
    model.initialize(rng);
    auto tails = model.tail_scores(2, 1);
    auto heads = model.head_scores(1, 4);
    for (int e = 0; e < 9; ++e) {
      EXPECT_NEAR(tails(e), model.score(2, 1, e), 1e-12);
      EXPECT_NEAR(heads(e), model.score(e, 1, 4), 1e-12);
    }
  }
}

TEST(Embed, EvaluateMatchesBruteForce) {
  for (auto kind : {ModelKind::TransE, ModelKind::DistMult, ModelKind::ComplEx}) {
    auto ids = split_triples(random_labeled(50, 4, 600, 5), {}, 9);
    ASSERT_EQ(ids.entity_count(), 50);
    std::mt19937_64 rng(21);
    Model model(kind, ids.entity_count(), ids.relation_count(), 8);
    model.initialize(rng);
    auto expected = soa::testing::brute_force_eval(ids, ids.test, model);
    auto fast = evaluate(model, ids);
    auto generic = evaluate_with(ids, ids.test, [&](int h, int r, int t) { return model.score(h, r, t); });
    for (const auto& got : {fast, generic}) {
      EXPECT_EQ(got.queries, expected.queries);
      EXPECT_NEAR(got.mrr_raw, expected.mrr_raw, 1e-12);
      EXPECT_NEAR(got.mrr_filtered, expected.mrr_filtered, 1e-12);
      EXPECT_NEAR(got.hits_at_1, expected.hits_at_1, 1e-12);
      EXPECT_NEAR(got.hits_at_3, expected.hits_at_3, 1e-12);
      EXPECT_NEAR(got.hits_at_10, expected.hits_at_10, 1e-12);
    }
  }
}

TEST(Embed, TiesRankPessimistically) {
  auto ids = split_triples(random_labeled(20, 2, 100, 1), {}, 2);
  auto r = evaluate_with(ids, ids.test, [](int, int, int) { return 0.0; });
  // Every candidate ties with the truth, so each raw rank is the entity count.
  EXPECT_NEAR(r.mrr_raw, 1.0 / ids.entity_count(), 1e-12);
}

TEST(Embed, SplitProperties) {
  auto raw = random_labeled(60, 5, 500, 4);
  auto ids = split_triples(raw, {0.8, 0.1, 0.1}, 3);
  std::set<std::tuple<std::string, std::string, std::string>> distinct;
  for (const auto& t : raw) distinct.emplace(t.h, t.r, t.t);
  std::size_t n = distinct.size();
  EXPECT_EQ(ids.train.size() + ids.valid.size() + ids.test.size(), n);
  EXPECT_LE(ids.valid.size(), n / 10);
  EXPECT_LE(ids.test.size(), n / 10);
  EXPECT_EQ(ids.valid.size() + ids.test.size() + static_cast<std::size_t>(ids.moved_to_train),
            2 * static_cast<std::size_t>(std::floor(static_cast<double>(n) * 0.1)));
  EXPECT_TRUE(std::is_sorted(ids.entities.begin(), ids.entities.end()));
  std::set<int> train_e, train_r;
  for (const auto& t : ids.train) {
    train_e.insert(t.h);
    train_e.insert(t.t);
    train_r.insert(t.r);
  }
  for (const auto* part : {&ids.valid, &ids.test})
    for (const auto& t : *part) {
      EXPECT_TRUE(train_e.contains(t.h) && train_e.contains(t.t) && train_r.contains(t.r));
    }
  auto again = split_triples(raw, {0.8, 0.1, 0.1}, 3);
  EXPECT_EQ(again.test, ids.test);
  EXPECT_THROW(split_triples(random_labeled(5, 1, 5, 1), {}, 1), soa::Error);
  EXPECT_THROW(split_triples(raw, {0.5, 0.1, 0.1}, 1), soa::Error);
}

TEST(Embed, RandomBaselineFormula) {
  auto ids = split_triples(random_labeled(30, 3, 300, 8), {}, 1);
  std::set<std::tuple<int, int, int>> known;
  for (const auto* part : {&ids.train, &ids.valid, &ids.test})
    for (const auto& x : *part) known.emplace(x.h, x.r, x.t);
  auto harmonic_over = [](long long c) {
    double h = 0;
    for (long long i = 1; i <= c; ++i) h += 1.0 / static_cast<double>(i);
    return h / static_cast<double>(c);
  };
  double sum = 0;
  for (const auto& q : ids.test) {
    long long tails = 1, heads = 1;
    for (int e = 0; e < ids.entity_count(); ++e) {
      if (e != q.t && !known.contains({q.h, q.r, e})) ++tails;
      if (e != q.h && !known.contains({e, q.r, q.t})) ++heads;
    }
    sum += harmonic_over(tails) + harmonic_over(heads);
  }
  EXPECT_NEAR(random_baseline_mrr(ids, ids.test), sum / (2.0 * static_cast<double>(ids.test.size())), 1e-12);
}

TEST(Embed, ToyGraphShape) {
  auto toy = toy_compositional_graph(7);
  std::set<std::string> entities, relations;
  for (const auto& t : toy) {
    entities.insert(t.h);
    entities.insert(t.t);
    relations.insert(t.r);
  }
  EXPECT_EQ(entities.size(), 200u);
  EXPECT_EQ(relations.size(), 4u);
  EXPECT_GE(toy.size(), 1000u);
}

TEST(Embed, TrainingLowersLossAndIsDeterministic) {
  auto ids = split_triples(toy_compositional_graph(7), {}, 7);
  for (auto kind : {ModelKind::TransE, ModelKind::DistMult, ModelKind::ComplEx}) {
    TrainConfig cfg;
    cfg.kind = kind;
    cfg.dim = 16;
    cfg.batch_size = 64;
    cfg.epochs = 8;
    cfg.learning_rate = kind == ModelKind::TransE ? 0.05 : 1.0;
    std::vector<double> losses;
    auto model = train(ids, cfg, &losses);
    ASSERT_EQ(losses.size(), 8u);
    EXPECT_LT(losses.back(), losses.front()) << name(kind);
    EXPECT_TRUE(model.finite());
    auto again = train(ids, cfg);
    EXPECT_EQ(again.entities, model.entities);
    if (kind == ModelKind::TransE) {
      for (Eigen::Index i = 0; i < model.entities.rows(); ++i) EXPECT_NEAR(model.entities.row(i).norm(), 1.0, 1e-9);
    }
  }
}

TEST(Embed, InvalidConfigRejected) {
  TrainConfig cfg;
  cfg.dim = 0;
  EXPECT_THROW(validate(cfg), soa::Error);
  cfg = {};
  cfg.kind = ModelKind::ComplEx;
  cfg.dim = 7;
  EXPECT_THROW(validate(cfg), soa::Error);
  cfg = {};
  cfg.learning_rate = -1;
  EXPECT_THROW(validate(cfg), soa::Error);
}

TEST(Embed, VectorsFile) {
  auto ids = split_triples(random_labeled(10, 2, 60, 1), {}, 1);
  std::mt19937_64 rng(1);
  Model model(ModelKind::DistMult, ids.entity_count(), ids.relation_count(), 3);
  model.initialize(rng);
  std::ostringstream out;
  write_vectors(out, model, ids);
  std::istringstream in(out.str());
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) {
    EXPECT_EQ(std::count(line.begin(), line.end(), '\t'), 3);
    EXPECT_EQ(line.substr(0, line.find('\t')), ids.entities[static_cast<std::size_t>(lines)]);
    ++lines;
  }
  EXPECT_EQ(lines, ids.entity_count());
}
