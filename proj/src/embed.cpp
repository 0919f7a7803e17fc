#include "soa/embed.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <ostream>
#include <set>
#include <unordered_set>

#include "soa/log.hpp"

namespace soa::embed {

std::string_view name(ModelKind kind) {
  switch (kind) {
    case ModelKind::TransE: return "transe";
    case ModelKind::DistMult: return "distmult";
    case ModelKind::ComplEx: return "complex";
  }
  return "distmult";
}

std::optional<ModelKind> parse_model_kind(std::string_view text) {
  std::string s(text);
  for (auto& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  for (auto k : {ModelKind::TransE, ModelKind::DistMult, ModelKind::ComplEx})
    if (name(k) == s) return k;
  return std::nullopt;
}

// ---- id triples ----

IdTripleSet split_triples(std::vector<LabeledTriple> triples, SplitRatios ratios, std::uint64_t seed) {
  if (ratios.train < 0 || ratios.valid < 0 || ratios.test < 0 ||
      std::abs(ratios.train + ratios.valid + ratios.test - 1.0) > 1e-9)
    throw Error("InvalidConfig", "split ratios must be non-negative and sum to 1");
  auto key = [](const LabeledTriple& x) { return std::tie(x.h, x.r, x.t); };
  std::sort(triples.begin(), triples.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
  triples.erase(std::unique(triples.begin(), triples.end(), [&](const auto& a, const auto& b) { return key(a) == key(b); }),
                triples.end());
  if (triples.size() < 10)
    throw Error("TooFewTriples", std::to_string(triples.size()) + " entity-relation statements, need at least 10");

  IdTripleSet ids;
  std::set<std::string> ents, rels;
  for (const auto& x : triples) {
    ents.insert(x.h);
    ents.insert(x.t);
    rels.insert(x.r);
  }
  ids.entities.assign(ents.begin(), ents.end());
  ids.relations.assign(rels.begin(), rels.end());
  std::unordered_map<std::string, int> eidx, ridx;
  for (std::size_t i = 0; i < ids.entities.size(); ++i) eidx.emplace(ids.entities[i], static_cast<int>(i));
  for (std::size_t i = 0; i < ids.relations.size(); ++i) ridx.emplace(ids.relations[i], static_cast<int>(i));

  std::vector<HrtTriple> all;
  all.reserve(triples.size());
  for (const auto& x : triples) all.push_back({eidx.at(x.h), ridx.at(x.r), eidx.at(x.t)});

  std::mt19937_64 rng(seed);
  shuffle(all, rng);
  auto n = all.size();
  auto n_valid = static_cast<std::size_t>(std::floor(static_cast<double>(n) * ratios.valid));
  auto n_test = static_cast<std::size_t>(std::floor(static_cast<double>(n) * ratios.test));
  auto n_train = n - n_valid - n_test;
  ids.train.assign(all.begin(), all.begin() + static_cast<long>(n_train));

  std::vector<bool> seen_entity(ids.entities.size(), false), seen_relation(ids.relations.size(), false);
  for (const auto& x : ids.train) {
    seen_entity[x.h] = seen_entity[x.t] = true;
    seen_relation[x.r] = true;
  }
  auto place = [&](std::size_t from, std::size_t count, std::vector<HrtTriple>& target) {
    for (std::size_t i = from; i < from + count; ++i) {
      const auto& x = all[i];
      if (seen_entity[x.h] && seen_entity[x.t] && seen_relation[x.r]) {
        target.push_back(x);
      } else {
        ids.train.push_back(x);
        seen_entity[x.h] = seen_entity[x.t] = true;
        seen_relation[x.r] = true;
        ++ids.moved_to_train;
      }
    }
  };
  place(n_train, n_valid, ids.valid);
  place(n_train + n_valid, n_test, ids.test);
  return ids;
}

IdTripleSet build_id_triples(const TripleIndex& index, SplitRatios ratios, std::uint64_t seed) {
  std::vector<LabeledTriple> triples;
  for (const auto& t : index.statements()) {
    const auto* o = std::get_if<Iri>(&index.term(t.o));
    if (!o) continue;
    triples.push_back({std::get<Iri>(index.term(t.s)).str(), std::get<Iri>(index.term(t.p)).str(), o->str()});
  }
  return split_triples(std::move(triples), ratios, seed);
}

// ---- model ----

template <typename Scalar>
EmbeddingModel<Scalar>::EmbeddingModel(ModelKind kind, int n_entities, int n_relations, int dim)
    : entities(Matrix::Zero(n_entities, dim)), relations(Matrix::Zero(n_relations, dim)), kind_(kind), dim_(dim) {
  if (dim <= 0 || n_entities <= 0 || n_relations <= 0) throw Error("InvalidConfig", "empty embedding model");
  if (kind == ModelKind::ComplEx && dim % 2 != 0) throw Error("InvalidConfig", "ComplEx needs an even dimension");
}

template <typename Scalar>
void EmbeddingModel<Scalar>::initialize(std::mt19937_64& rng) {
  const double bound = 6.0 / std::sqrt(static_cast<double>(dim_));
  for (auto* m : {&entities, &relations})
    for (Eigen::Index i = 0; i < m->rows(); ++i)
      for (Eigen::Index j = 0; j < m->cols(); ++j) (*m)(i, j) = static_cast<Scalar>(bound * (2.0 * unit_interval(rng) - 1.0));
  if (kind_ == ModelKind::TransE) entities.rowwise().normalize();
}

template <typename Scalar>
Scalar EmbeddingModel<Scalar>::score(int h, int r, int t) const {
  auto eh = entities.row(h);
  auto wr = relations.row(r);
  auto et = entities.row(t);
  switch (kind_) {
    case ModelKind::TransE: return -(eh + wr - et).norm();
    case ModelKind::DistMult: return (eh.array() * wr.array() * et.array()).sum();
    case ModelKind::ComplEx: {
      const int k = dim_ / 2;
      auto hr = eh.head(k).array(), hi = eh.tail(k).array();
      auto rr = wr.head(k).array(), ri = wr.tail(k).array();
      auto tr = et.head(k).array(), ti = et.tail(k).array();
      return (hr * rr * tr + hi * rr * ti + hr * ri * ti - hi * ri * tr).sum();
    }
  }
  return 0;
}

template <typename Scalar>
typename EmbeddingModel<Scalar>::Vector EmbeddingModel<Scalar>::tail_scores(int h, int r) const {
  Vector eh = entities.row(h).transpose();
  Vector wr = relations.row(r).transpose();
  switch (kind_) {
    case ModelKind::TransE: return -(entities.rowwise() - (eh + wr).transpose()).rowwise().norm();
    case ModelKind::DistMult: return entities * eh.cwiseProduct(wr);
    case ModelKind::ComplEx: {
      const int k = dim_ / 2;
      Vector a = eh.head(k).cwiseProduct(wr.head(k)) - eh.tail(k).cwiseProduct(wr.tail(k));
      Vector b = eh.tail(k).cwiseProduct(wr.head(k)) + eh.head(k).cwiseProduct(wr.tail(k));
      return entities.leftCols(k) * a + entities.rightCols(k) * b;
    }
  }
  return {};
}

template <typename Scalar>
typename EmbeddingModel<Scalar>::Vector EmbeddingModel<Scalar>::head_scores(int r, int t) const {
  Vector wr = relations.row(r).transpose();
  Vector et = entities.row(t).transpose();
  switch (kind_) {
    case ModelKind::TransE: return -(entities.rowwise() + (wr - et).transpose()).rowwise().norm();
    case ModelKind::DistMult: return entities * wr.cwiseProduct(et);
    case ModelKind::ComplEx: {
      const int k = dim_ / 2;
      Vector a = wr.head(k).cwiseProduct(et.head(k)) + wr.tail(k).cwiseProduct(et.tail(k));
      Vector b = wr.head(k).cwiseProduct(et.tail(k)) - wr.tail(k).cwiseProduct(et.head(k));
      return entities.leftCols(k) * a + entities.rightCols(k) * b;
    }
  }
  return {};
}

template <typename Scalar>
void EmbeddingModel<Scalar>::score_gradient(int h, int r, int t, Scalar weight, Matrix& d_entities,
                                            Matrix& d_relations) const {
  using Row = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;
  Row eh = entities.row(h), wr = relations.row(r), et = entities.row(t);
  switch (kind_) {
    case ModelKind::TransE: {
      Row v = eh + wr - et;
      Scalar n = v.norm();
      if (n == Scalar(0)) return;  // subgradient 0 at the kink
      Row g = (weight / n) * v;
      d_entities.row(h) -= g;
      d_relations.row(r) -= g;
      d_entities.row(t) += g;
      return;
    }
    case ModelKind::DistMult:
      d_entities.row(h) += weight * wr.cwiseProduct(et);
      d_relations.row(r) += weight * eh.cwiseProduct(et);
      d_entities.row(t) += weight * eh.cwiseProduct(wr);
      return;
    case ModelKind::ComplEx: {
      const int k = dim_ / 2;
      Row hr = eh.head(k), hi = eh.tail(k), rr = wr.head(k), ri = wr.tail(k), tr = et.head(k), ti = et.tail(k);
      d_entities.row(h).head(k) += weight * (rr.cwiseProduct(tr) + ri.cwiseProduct(ti));
      d_entities.row(h).tail(k) += weight * (rr.cwiseProduct(ti) - ri.cwiseProduct(tr));
      d_relations.row(r).head(k) += weight * (hr.cwiseProduct(tr) + hi.cwiseProduct(ti));
      d_relations.row(r).tail(k) += weight * (hr.cwiseProduct(ti) - hi.cwiseProduct(tr));
      d_entities.row(t).head(k) += weight * (hr.cwiseProduct(rr) - hi.cwiseProduct(ri));
      d_entities.row(t).tail(k) += weight * (hi.cwiseProduct(rr) + hr.cwiseProduct(ri));
      return;
    }
  }
}

template <typename Scalar>
void EmbeddingModel<Scalar>::renormalize(std::span<const int> rows) {
  if (kind_ != ModelKind::TransE) return;
  for (int i : rows) {
    Scalar n = entities.row(i).norm();
    if (n > Scalar(0) && std::abs(static_cast<double>(n) - 1.0) > 1e-12) entities.row(i) /= n;
  }
}

template <typename Scalar>
bool EmbeddingModel<Scalar>::finite() const {
  return entities.allFinite() && relations.allFinite();
}

template class EmbeddingModel<float>;
template class EmbeddingModel<double>;

// ---- losses ----

namespace {

template <typename Scalar>
Scalar softplus(Scalar x) {
  return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

template <typename Scalar>
Scalar sigmoid(Scalar x) {
  if (x >= 0) return Scalar(1) / (Scalar(1) + std::exp(-x));
  Scalar e = std::exp(x);
  return e / (Scalar(1) + e);
}

template <typename Scalar>
Scalar example_loss(const EmbeddingModel<Scalar>& m, const Example& ex, const LossConfig& cfg) {
  const auto& p = ex.positive;
  Scalar sp = m.score(p.h, p.r, p.t);
  const Scalar k = static_cast<Scalar>(ex.negatives.size());
  Scalar loss = 0;
  if (m.kind() == ModelKind::TransE) {
    for (const auto& n : ex.negatives)
      loss += std::max(Scalar(0), static_cast<Scalar>(cfg.margin) - sp + m.score(n.h, n.r, n.t)) / k;
    return loss;
  }
  loss = softplus(-sp);
  for (const auto& n : ex.negatives) loss += softplus(m.score(n.h, n.r, n.t)) / k;
  loss += static_cast<Scalar>(cfg.l2) *
          (m.entities.row(p.h).squaredNorm() + m.relations.row(p.r).squaredNorm() + m.entities.row(p.t).squaredNorm());
  return loss;
}

// Accumulates into zero-initialized buffers; marks rows it writes.
template <typename Scalar>
void accumulate_gradient(const EmbeddingModel<Scalar>& m, std::span<const Example> batch, const LossConfig& cfg,
                         typename EmbeddingModel<Scalar>::Matrix& dE, typename EmbeddingModel<Scalar>::Matrix& dR,
                         std::vector<int>& touched_e, std::vector<int>& touched_r) {
  if (batch.empty()) return;
  const Scalar inv_b = Scalar(1) / static_cast<Scalar>(batch.size());
  auto touch = [&](const HrtTriple& x) {
    touched_e.push_back(x.h);
    touched_e.push_back(x.t);
    touched_r.push_back(x.r);
  };
  for (const auto& ex : batch) {
    const auto& p = ex.positive;
    const Scalar k = static_cast<Scalar>(ex.negatives.size());
    Scalar sp = m.score(p.h, p.r, p.t);
    touch(p);
    if (m.kind() == ModelKind::TransE) {
      for (const auto& n : ex.negatives) {
        touch(n);
        if (static_cast<Scalar>(cfg.margin) - sp + m.score(n.h, n.r, n.t) <= 0) continue;
        m.score_gradient(p.h, p.r, p.t, -inv_b / k, dE, dR);
        m.score_gradient(n.h, n.r, n.t, inv_b / k, dE, dR);
      }
      continue;
    }
    m.score_gradient(p.h, p.r, p.t, -inv_b * sigmoid(-sp), dE, dR);
    for (const auto& n : ex.negatives) {
      touch(n);
      m.score_gradient(n.h, n.r, n.t, inv_b * sigmoid(m.score(n.h, n.r, n.t)) / k, dE, dR);
    }
    const Scalar c = Scalar(2) * static_cast<Scalar>(cfg.l2) * inv_b;
    dE.row(p.h) += c * m.entities.row(p.h);
    dR.row(p.r) += c * m.relations.row(p.r);
    dE.row(p.t) += c * m.entities.row(p.t);
  }
}

void sort_unique(std::vector<int>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

template <typename Scalar>
Scalar batch_loss(const EmbeddingModel<Scalar>& model, std::span<const Example> batch, const LossConfig& cfg) {
  if (batch.empty()) return 0;
  Scalar total = 0;
  for (const auto& ex : batch) total += example_loss(model, ex, cfg);
  return total / static_cast<Scalar>(batch.size());
}

template <typename Scalar>
void batch_gradient(const EmbeddingModel<Scalar>& model, std::span<const Example> batch, const LossConfig& cfg,
                    typename EmbeddingModel<Scalar>::Matrix& d_entities,
                    typename EmbeddingModel<Scalar>::Matrix& d_relations, std::vector<int>* touched_entities,
                    std::vector<int>* touched_relations) {
  d_entities.setZero(model.entities.rows(), model.entities.cols());
  d_relations.setZero(model.relations.rows(), model.relations.cols());
  std::vector<int> te, tr;
  accumulate_gradient(model, batch, cfg, d_entities, d_relations, te, tr);
  sort_unique(te);
  sort_unique(tr);
  if (touched_entities) *touched_entities = std::move(te);
  if (touched_relations) *touched_relations = std::move(tr);
}

template float batch_loss(const EmbeddingModel<float>&, std::span<const Example>, const LossConfig&);
template double batch_loss(const EmbeddingModel<double>&, std::span<const Example>, const LossConfig&);
template void batch_gradient(const EmbeddingModel<float>&, std::span<const Example>, const LossConfig&,
                             EmbeddingModel<float>::Matrix&, EmbeddingModel<float>::Matrix&, std::vector<int>*,
                             std::vector<int>*);
template void batch_gradient(const EmbeddingModel<double>&, std::span<const Example>, const LossConfig&,
                             EmbeddingModel<double>::Matrix&, EmbeddingModel<double>::Matrix&, std::vector<int>*,
                             std::vector<int>*);

// ---- training ----

void validate(const TrainConfig& cfg) {
  if (cfg.dim <= 0 || cfg.batch_size <= 0 || cfg.epochs <= 0 || cfg.negatives <= 0)
    throw Error("InvalidConfig", "dim, batch size, epochs and negatives must be positive");
  if (!(cfg.learning_rate > 0) || !(cfg.margin > 0) || !(cfg.l2 >= 0))
    throw Error("InvalidConfig", "learning rate and margin must be positive, l2 non-negative");
  if (cfg.kind == ModelKind::ComplEx && cfg.dim % 2 != 0) throw Error("InvalidConfig", "ComplEx needs an even dimension");
}

Model train(const IdTripleSet& ids, const TrainConfig& cfg, std::vector<double>* epoch_loss) {
  validate(cfg);
  if (ids.train.empty()) throw Error("TooFewTriples", "empty training split");
  std::mt19937_64 rng(cfg.seed);
  Model model(cfg.kind, ids.entity_count(), ids.relation_count(), cfg.dim);
  model.initialize(rng);
  const LossConfig loss_cfg{cfg.margin, cfg.l2};

  Model::Matrix dE = Model::Matrix::Zero(model.entities.rows(), model.entities.cols());
  Model::Matrix dR = Model::Matrix::Zero(model.relations.rows(), model.relations.cols());
  std::vector<std::size_t> order(ids.train.size());
  std::vector<Example> batch;
  std::vector<int> te, tr;
  const auto n_entities = static_cast<std::uint64_t>(ids.entity_count());

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), 0);
    shuffle(order, rng);
    double total = 0;
    for (std::size_t start = 0; start < order.size(); start += static_cast<std::size_t>(cfg.batch_size)) {
      auto end = std::min(order.size(), start + static_cast<std::size_t>(cfg.batch_size));
      batch.clear();
      for (auto i = start; i < end; ++i) {
        Example ex{ids.train[order[i]], {}};
        for (int k = 0; k < cfg.negatives; ++k) {
          HrtTriple n = ex.positive;
          bool corrupt_head = uniform_below(rng, 2) == 0;
          int e = static_cast<int>(uniform_below(rng, n_entities));
          (corrupt_head ? n.h : n.t) = e;
          ex.negatives.push_back(n);
        }
        batch.push_back(std::move(ex));
      }
      double loss = batch_loss<double>(model, batch, loss_cfg);
      if (!std::isfinite(loss))
        throw Error("NonFiniteLoss", "epoch " + std::to_string(epoch + 1) + ", batch starting at " +
                                         std::to_string(start) + ": loss " + std::to_string(loss));
      total += loss * static_cast<double>(batch.size());

      te.clear();
      tr.clear();
      accumulate_gradient<double>(model, batch, loss_cfg, dE, dR, te, tr);
      sort_unique(te);
      sort_unique(tr);
      for (int i : te) {
        model.entities.row(i) -= cfg.learning_rate * dE.row(i);
        dE.row(i).setZero();
      }
      for (int i : tr) {
        model.relations.row(i) -= cfg.learning_rate * dR.row(i);
        dR.row(i).setZero();
      }
      model.renormalize(te);
    }
    double mean = total / static_cast<double>(order.size());
    if (epoch_loss) epoch_loss->push_back(mean);
    log::info("epoch", {{"epoch", epoch + 1}, {"loss", mean}, {"model", name(cfg.kind)}});
  }
  if (!model.finite()) throw Error("NonFiniteLoss", "parameters diverged");
  return model;
}

// ---- evaluation ----

namespace {

struct Known {
  // (h, r) -> tails and (r, t) -> heads over train, valid and test.
  std::unordered_map<std::uint64_t, std::vector<int>> tails, heads;

  static std::uint64_t key(int a, int b) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
  }

  explicit Known(const IdTripleSet& ids) {
    for (const auto* part : {&ids.train, &ids.valid, &ids.test})
      for (const auto& x : *part) {
        tails[key(x.h, x.r)].push_back(x.t);
        heads[key(x.r, x.t)].push_back(x.h);
      }
    for (auto* m : {&tails, &heads})
      for (auto& [k, v] : *m) sort_unique(v);
  }

  const std::vector<int>& tails_of(int h, int r) const {
    static const std::vector<int> none;
    auto it = tails.find(key(h, r));
    return it == tails.end() ? none : it->second;
  }
  const std::vector<int>& heads_of(int r, int t) const {
    static const std::vector<int> none;
    auto it = heads.find(key(r, t));
    return it == heads.end() ? none : it->second;
  }
};

struct Accumulator {
  double rr_raw = 0, rr_filtered = 0, h1 = 0, h3 = 0, h10 = 0;
  long long n = 0;

  // `scores[e]` for every candidate; `truth` is the true entity.
  template <typename GetScore>
  void rank(int entities, int truth, GetScore&& score, const std::vector<int>& known) {
    double target = score(truth);
    long long raw = 1, filtered_out = 0;
    for (int e = 0; e < entities; ++e) {
      if (e == truth) continue;
      if (score(e) >= target) {
        ++raw;
        if (std::binary_search(known.begin(), known.end(), e)) ++filtered_out;
      }
    }
    long long filtered = raw - filtered_out;
    rr_raw += 1.0 / static_cast<double>(raw);
    rr_filtered += 1.0 / static_cast<double>(filtered);
    h1 += filtered <= 1;
    h3 += filtered <= 3;
    h10 += filtered <= 10;
    ++n;
  }

  EvalResult result() const {
    EvalResult r;
    r.queries = n;
    if (n == 0) return r;
    double d = static_cast<double>(n);
    r.mrr_raw = rr_raw / d;
    r.mrr_filtered = rr_filtered / d;
    r.hits_at_1 = h1 / d;
    r.hits_at_3 = h3 / d;
    r.hits_at_10 = h10 / d;
    return r;
  }
};

}  // namespace

EvalResult evaluate_with(const IdTripleSet& ids, std::span<const HrtTriple> queries, const Scorer& scorer) {
  Known known(ids);
  Accumulator acc;
  const int n = ids.entity_count();
  for (const auto& q : queries) {
    acc.rank(n, q.t, [&](int e) { return scorer(q.h, q.r, e); }, known.tails_of(q.h, q.r));
    acc.rank(n, q.h, [&](int e) { return scorer(e, q.r, q.t); }, known.heads_of(q.r, q.t));
  }
  return acc.result();
}

EvalResult evaluate(const Model& model, const IdTripleSet& ids, std::span<const HrtTriple> queries) {
  Known known(ids);
  Accumulator acc;
  const int n = ids.entity_count();
  for (const auto& q : queries) {
    Model::Vector tails = model.tail_scores(q.h, q.r);
    acc.rank(n, q.t, [&](int e) { return tails[e]; }, known.tails_of(q.h, q.r));
    Model::Vector heads = model.head_scores(q.r, q.t);
    acc.rank(n, q.h, [&](int e) { return heads[e]; }, known.heads_of(q.r, q.t));
  }
  return acc.result();
}

EvalResult evaluate(const Model& model, const IdTripleSet& ids) { return evaluate(model, ids, ids.test); }

double random_baseline_mrr(const IdTripleSet& ids, std::span<const HrtTriple> queries) {
  Known known(ids);
  const int n = ids.entity_count();
  auto expected_rr = [](long long c) {
    double h = 0;
    for (long long i = 1; i <= c; ++i) h += 1.0 / static_cast<double>(i);
    return h / static_cast<double>(c);
  };
  double total = 0;
  long long count = 0;
  for (const auto& q : queries) {
    // Known triples other than the query itself are removed from the pool.
    total += expected_rr(n - static_cast<long long>(known.tails_of(q.h, q.r).size()) + 1);
    total += expected_rr(n - static_cast<long long>(known.heads_of(q.r, q.t).size()) + 1);
    count += 2;
  }
  return count == 0 ? 0.0 : total / static_cast<double>(count);
}

nlohmann::json to_json(const EvalResult& r) {
  return {{"mrr_raw", r.mrr_raw},
          {"mrr_filtered", r.mrr_filtered},
          {"hits_at_1", r.hits_at_1},
          {"hits_at_3", r.hits_at_3},
          {"hits_at_10", r.hits_at_10},
          {"queries", r.queries}};
}

void write_vectors(std::ostream& out, const Model& model, const IdTripleSet& ids) {
  char buf[32];
  for (int i = 0; i < ids.entity_count(); ++i) {
    out << ids.entities[static_cast<std::size_t>(i)];
    for (int j = 0; j < model.dim(); ++j) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), model.entities(i, j));
      out << '\t' << std::string_view(buf, static_cast<std::size_t>(ptr - buf));
    }
    out << '\n';
  }
}

std::vector<LabeledTriple> toy_compositional_graph(std::uint64_t seed) {
  constexpr int kGroups = 40, kSize = 5, kEntities = kGroups * kSize;
  std::mt19937_64 rng(seed);
  auto entity = [](int i) { return "https://example.org/toy/entity/" + std::to_string(i); };
  auto relation = [](std::string_view r) { return "https://example.org/toy/relation/" + std::string(r); };
  auto member = [&](int group, int slot) { return ((group % kGroups + kGroups) % kGroups) * kSize + slot; };

  // peer[i]: two distinct others of the same group; next[i]: two of group+1.
  std::vector<std::array<int, 2>> peer(kEntities), next(kEntities);
  for (int i = 0; i < kEntities; ++i) {
    int g = i / kSize, self = i % kSize;
    std::vector<int> others;
    for (int s = 0; s < kSize; ++s)
      if (s != self) others.push_back(s);
    shuffle(others, rng);
    peer[static_cast<std::size_t>(i)] = {member(g, others[0]), member(g, others[1])};
    std::vector<int> slots{0, 1, 2, 3, 4};
    shuffle(slots, rng);
    next[static_cast<std::size_t>(i)] = {member(g + 1, slots[0]), member(g + 1, slots[1])};
  }

  std::vector<LabeledTriple> out;
  for (int i = 0; i < kEntities; ++i) {
    auto u = static_cast<std::size_t>(i);
    for (int p : peer[u]) out.push_back({entity(i), relation("peer"), entity(p)});
    for (int n : next[u]) out.push_back({entity(i), relation("next"), entity(n)});
    auto via = static_cast<std::size_t>(next[u][uniform_below(rng, 2)]);
    out.push_back({entity(i), relation("second"), entity(next[via][uniform_below(rng, 2)])});
    auto mid = static_cast<std::size_t>(peer[u][uniform_below(rng, 2)]);
    int pp = peer[mid][uniform_below(rng, 2)];
    if (pp == i) pp = peer[mid][0] == i ? peer[mid][1] : peer[mid][0];
    out.push_back({entity(i), relation("peer_of_peer"), entity(pp)});
  }
  return out;
}

}  // namespace soa::embed
