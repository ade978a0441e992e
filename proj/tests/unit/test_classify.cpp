#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "skg/classify/dataset.hpp"
#include "skg/classify/disciplines.hpp"
#include "skg/classify/losses.hpp"
#include "skg/classify/metrics.hpp"
#include "skg/classify/model.hpp"
#include "skg/classify/train.hpp"
#include "skg/classify/vocabulary.hpp"
#include "skg/common/error.hpp"
#include "skg/common/text.hpp"
#include "support.hpp"

using namespace skg;
using namespace skg::classify;
using skg::testing::numeric_gradient;
using skg::testing::relative_error;

#define SKG_GOLDEN_BATCH_LOSS 1.3015611551121133
#define SKG_GOLDEN_AUGMENT "t0", "t3", "t7", "t8"

namespace {

Eigen::VectorXd random_vector(Rng& rng, Eigen::Index n, double scale = 1.0) {
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = scale * rng.normal();
  return v;
}

Eigen::VectorXd pack(const DisciplineModel& m) {
  Eigen::VectorXd v(m.encoder.size() + m.encoder_bias.size() + m.classifier.size() +
                    m.classifier_bias.size());
  v << Eigen::Map<const Eigen::VectorXd>(m.encoder.data(), m.encoder.size()), m.encoder_bias,
      Eigen::Map<const Eigen::VectorXd>(m.classifier.data(), m.classifier.size()), m.classifier_bias;
  return v;
}

void unpack(const Eigen::VectorXd& v, DisciplineModel& m) {
  Eigen::Index at = 0;
  const auto take = [&](double* data, Eigen::Index n) {
    Eigen::Map<Eigen::VectorXd>(data, n) = v.segment(at, n);
    at += n;
  };
  take(m.encoder.data(), m.encoder.size());
  take(m.encoder_bias.data(), m.encoder_bias.size());
  take(m.classifier.data(), m.classifier.size());
  take(m.classifier_bias.data(), m.classifier_bias.size());
}

Eigen::VectorXd pack(const ModelGradient& g) {
  Eigen::VectorXd v(g.encoder.size() + g.encoder_bias.size() + g.classifier.size() +
                    g.classifier_bias.size());
  v << Eigen::Map<const Eigen::VectorXd>(g.encoder.data(), g.encoder.size()), g.encoder_bias,
      Eigen::Map<const Eigen::VectorXd>(g.classifier.data(), g.classifier.size()), g.classifier_bias;
  return v;
}

struct ToyProblem {
  DisciplineModel model;
  std::vector<BatchItem> batch;
};

ToyProblem toy_problem(std::uint64_t seed) {
  Rng rng(seed);
  const std::vector<std::vector<std::string>> docs{
      {"virus", "cells", "protein"}, {"school", "students", "virus"}, {"market", "prices", "school"},
      {"protein", "genome", "cells"}};
  auto vocab = build_vocabulary(docs, 1, 100);
  ToyProblem p{init_model(vocab, 3, 0.5, seed), {}};
  // larger weights than the initialiser's so the gradients are not tiny
  p.model.encoder = p.model.encoder.unaryExpr([&](double) { return rng.normal(); });
  p.model.classifier = p.model.classifier.unaryExpr([&](double) { return 0.5 * rng.normal(); });
  for (std::size_t i = 0; i < 3; ++i) {
    BatchItem item;
    const auto& d = docs[rng.below(docs.size())];
    item.full = featurize(d, vocab);
    item.view_one = featurize({d[0], d[1]}, vocab);
    item.view_two = featurize({d[1], d[2]}, vocab);
    item.labels = label_vector({rng.below(22), 21});
    p.batch.push_back(item);
  }
  return p;
}

}  // namespace

TEST_CASE("22 disciplines, parsed by index or name") {
  CHECK(discipline_names().size() == 22);
  CHECK(discipline_names()[10] == "Medical and Health Sciences");
  CHECK(parse_discipline("7") == 7u);
  CHECK(parse_discipline("economics") == 13u);
  CHECK_FALSE(parse_discipline("22").has_value());
  CHECK_FALSE(parse_discipline("Alchemy").has_value());
}

TEST_CASE("vocabulary idf by hand") {
  const std::vector<std::vector<std::string>> docs{{"a", "b"}, {"a", "c"}};
  const auto v = build_vocabulary(docs, 1, 100);
  REQUIRE(v.size() == 3);
  CHECK(v.token(0) == "a");
  CHECK(v.idf(*v.find("a")) == 0.0);
  CHECK(v.idf(*v.find("b")) == doctest::Approx(std::log(2.0)));
  CHECK(v.idf(*v.find("c")) == doctest::Approx(std::log(2.0)));

  std::vector<std::string> warnings;
  CHECK(build_vocabulary(docs, 3, 100, &warnings).size() == 0);
  CHECK(warnings.size() == 1);

  const auto one = build_vocabulary(docs, 1, 1);
  REQUIRE(one.size() == 1);
  CHECK(one.token(0) == "a");
  CHECK_THROWS_AS(build_vocabulary({}, 1, 10), Error);
}

TEST_CASE("feature vectors are finite, non-negative and in range") {
  const auto docs = testing::two_discipline_corpus(50, 3);
  std::vector<std::vector<std::string>> tokens;
  for (const auto& d : docs) tokens.push_back(d.tokens);
  const auto v = build_vocabulary(tokens, 1, 1000);
  for (const auto& t : tokens) {
    const auto f = featurize(t, v);
    CHECK(f.norm() == doctest::Approx(1.0));
    for (const auto& [i, w] : f.entries) {
      CHECK(i < v.size());
      CHECK(std::isfinite(w));
      CHECK(w >= 0.0);
    }
  }
  CHECK(featurize({"unseen"}, v).empty());
}

TEST_CASE("bce examples") {
  CHECK(bce_loss(Eigen::VectorXd::Constant(1, 1.0), Eigen::VectorXd::Constant(1, 1.0)) ==
        doctest::Approx(0.0).epsilon(1e-9));
  CHECK(bce_loss(Eigen::VectorXd::Constant(1, 0.5), Eigen::VectorXd::Constant(1, 1.0)) ==
        doctest::Approx(std::log(2.0)));
  CHECK_THROWS_AS(bce_loss(Eigen::VectorXd::Constant(1, 0.5), Eigen::VectorXd::Constant(1, 0.5)), Error);
}

TEST_CASE("bce gradient matches finite differences and the loss is non-negative") {
  Rng rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::VectorXd logits = random_vector(rng, 22, 2.0);
    Eigen::VectorXd y(22);
    for (int i = 0; i < 22; ++i) y(i) = rng.bernoulli(0.3) ? 1.0 : 0.0;
    const auto analytic = bce_with_logits(logits, y);
    const auto numeric = numeric_gradient([&](const Eigen::VectorXd& l) { return bce_with_logits(l, y).loss; },
                                          logits);
    CHECK(relative_error(analytic.gradient, numeric) < 1e-4);
    CHECK(analytic.loss >= 0.0);
    const Eigen::VectorXd p = logits.unaryExpr([](double l) { return sigmoid(l); });
    CHECK(bce_loss(p, y) == doctest::Approx(analytic.loss).epsilon(1e-9));
  }
}

TEST_CASE("info_nce examples") {
  Eigen::VectorXd a(3), b(3);
  a << 1, 2, 3;
  CHECK(info_nce_loss({{a, a}}, 0.5).loss == doctest::Approx(0.0));

  Eigen::VectorXd e1 = Eigen::VectorXd::Unit(4, 0), e2 = Eigen::VectorXd::Unit(4, 1);
  const double expected = -std::log(std::exp(2.0) / (std::exp(2.0) + 2.0));
  CHECK(info_nce_loss({{e1, e1}, {e2, e2}}, 0.5).loss == doctest::Approx(expected));

  CHECK_THROWS_AS(info_nce_loss({}, 0.5), Error);
  CHECK_THROWS_AS(info_nce_loss({{a, a}}, 0.0), Error);
  CHECK_THROWS_AS(info_nce_loss({{a, Eigen::VectorXd::Zero(3)}}, 0.5), Error);
}

TEST_CASE("info_nce gradient, sign and scale invariance on random batches") {
  Rng rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 2 + rng.below(4);
    const Eigen::Index d = 3 + static_cast<Eigen::Index>(rng.below(4));
    std::vector<AugmentedPair> batch;
    for (std::size_t i = 0; i < n; ++i) batch.push_back({random_vector(rng, d), random_vector(rng, d)});
    const auto r = info_nce_loss(batch, 0.5);
    CHECK(r.loss >= 0.0);

    Eigen::VectorXd x(2 * n * d), analytic(2 * n * d);
    for (std::size_t i = 0; i < n; ++i) {
      x.segment(2 * i * d, d) = batch[i].first;
      x.segment((2 * i + 1) * d, d) = batch[i].second;
      analytic.segment(2 * i * d, d) = r.grad_first[i];
      analytic.segment((2 * i + 1) * d, d) = r.grad_second[i];
    }
    const auto f = [&](const Eigen::VectorXd& v) {
      std::vector<AugmentedPair> b(n);
      for (std::size_t i = 0; i < n; ++i) {
        b[i].first = v.segment(2 * i * d, d);
        b[i].second = v.segment((2 * i + 1) * d, d);
      }
      return info_nce_loss(b, 0.5).loss;
    };
    CHECK(relative_error(analytic, numeric_gradient(f, x)) < 1e-4);

    // powers of two rescale without rounding, so equality is exact
    for (double s : {2.0, 0.25, 1024.0}) {
      auto scaled = batch;
      for (auto& p : scaled) {
        p.first *= s;
        p.second *= s;
      }
      CHECK(info_nce_loss(scaled, 0.5).loss == r.loss);
    }
    auto scaled = batch;
    for (auto& p : scaled) {
      p.first *= 3.7;
      p.second *= 3.7;
    }
    CHECK(info_nce_loss(scaled, 0.5).loss == doctest::Approx(r.loss).epsilon(1e-12));
  }
}

TEST_CASE("total loss") {
  CHECK(total_loss(0, 0) == 0.0);
  CHECK(total_loss(0.5, 1.5) == 2.0);
}

TEST_CASE("batch objective gradient over all parameters matches finite differences") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto p = toy_problem(seed);
    for (bool contrastive : {false, true}) {
      auto grad = ModelGradient::zeros_like(p.model);
      batch_objective(p.model, p.batch, contrastive, &grad);
      DisciplineModel probe = p.model;
      const auto f = [&](const Eigen::VectorXd& v) {
        unpack(v, probe);
        return batch_objective(probe, p.batch, contrastive, nullptr).total();
      };
      CHECK(relative_error(pack(grad), numeric_gradient(f, pack(p.model))) < 1e-4);
    }
  }
}

TEST_CASE("batch objective golden value") {
  auto p = toy_problem(99);
  const auto loss = batch_objective(p.model, p.batch, true, nullptr);
  CHECK(loss.total() == doctest::Approx(loss.bce + loss.contrastive));
  CHECK(loss.total() == doctest::Approx(SKG_GOLDEN_BATCH_LOSS).epsilon(1e-12));
}

TEST_CASE("augment") {
  const std::vector<std::string> doc{"t0", "t1", "t2", "t3", "t4", "t5", "t6", "t7", "t8", "t9"};
  Rng r0(1);
  CHECK(augment(doc, r0, 0.0) == doc);
  Rng a(5), b(5);
  const auto first = augment(doc, a, 0.3);
  CHECK(first == augment(doc, b, 0.3));
  CHECK(first == std::vector<std::string>{SKG_GOLDEN_AUGMENT});
  for (double p : {0.0, 0.5, 0.99}) {
    Rng r(3);
    CHECK(augment({"only"}, r, p) == std::vector<std::string>{"only"});
  }
  Rng r(4);
  CHECK(augment(doc, r, 0.999999).size() == 1);
  CHECK_THROWS_AS(augment(doc, r, 1.0), Error);
  CHECK_THROWS_AS(augment({}, r, 0.3), Error);
}

TEST_CASE("labels from probabilities") {
  Eigen::VectorXd p = Eigen::VectorXd::Constant(22, 0.1);
  p(0) = 0.9;
  CHECK(labels_from_probabilities(p, 0.5).labels == std::vector<std::size_t>{0});
  p(0) = 0.2;
  p(7) = 0.4;
  CHECK(labels_from_probabilities(p, 0.5).labels == std::vector<std::size_t>{7});
  p(3) = 0.6;
  p(9) = 0.5;
  CHECK(labels_from_probabilities(p, 0.5).labels == std::vector<std::size_t>{3, 9});
}

TEST_CASE("training: errors, zero epochs, determinism, separable data") {
  CHECK_THROWS_AS(train({}, TrainConfig{}), Error);
  CHECK_THROWS_AS(train({{"x", {"a"}, {}}}, TrainConfig{}), Error);

  const auto docs = testing::two_discipline_corpus(200, 8);
  TrainConfig cfg;
  cfg.epochs = 0;
  cfg.dim = 8;
  const auto untrained = train(docs, cfg);
  std::vector<std::vector<std::string>> tokens;
  for (const auto& d : docs) tokens.push_back(d.tokens);
  const auto expected = init_model(build_vocabulary(tokens, cfg.min_df, cfg.max_vocab), cfg.dim,
                                   cfg.temperature, mix_seed(cfg.seed, 0));
  CHECK(untrained == expected);

  cfg.epochs = 50;
  TrainReport report;
  const auto model = train(docs, cfg, &report);
  CHECK(report.epochs.size() == 50);
  CHECK(report.epochs.back().bce < report.epochs.front().bce);
  CHECK(model == train(docs, cfg));

  const auto held_out = testing::two_discipline_corpus(100, 9);
  std::vector<PredictionRecord> records;
  for (const auto& d : held_out) {
    const auto p = model.probabilities(featurize(d.tokens, model.vocab));
    PredictionRecord r{d.paper_id, std::vector<double>(p.data(), p.data() + p.size()), std::vector<int>(22, 0)};
    for (auto l : d.labels) r.y[l] = 1;
    records.push_back(r);
  }
  CHECK(evaluate(records, 3).auc > 0.99);
}

TEST_CASE("predict never returns an empty label set; golden toy prediction") {
  const auto docs = testing::two_discipline_corpus(40, 2);
  TrainConfig cfg;
  cfg.epochs = 50;
  cfg.dim = 8;
  const auto model = train(docs, cfg);
  Rng rng(6);
  for (int i = 0; i < 100; ++i) {
    std::string text;
    for (std::size_t k = rng.below(6); k > 0; --k) text += docs[rng.below(docs.size())].tokens[0] + " ";
    const double threshold = rng.uniform(0.01, 0.99);
    CHECK_FALSE(predict(text, model, threshold).labels.empty());
  }
  CHECK(predict("alpha1 alpha2 alpha3 study", model).labels == std::vector<std::size_t>{10});
  CHECK(predict("beta4 beta5 beta6 data", model).labels == std::vector<std::size_t>{13});
}

TEST_CASE("model serialisation is bit-exact") {
  const auto docs = testing::two_discipline_corpus(30, 4);
  TrainConfig cfg;
  cfg.epochs = 2;
  cfg.dim = 5;
  const auto model = train(docs, cfg);
  const auto back = DisciplineModel::deserialize(model.serialize());
  CHECK(back == model);
  CHECK(back.serialize() == model.serialize());
  CHECK_THROWS_AS(DisciplineModel::deserialize("garbage"), Error);
}

TEST_CASE("metrics by hand") {
  PredictionRecord r{"p", std::vector<double>(22, 0.0), std::vector<int>(22, 0)};
  r.y[0] = r.y[2] = 1;
  r.x[2] = 0.9;  // ranks: 2, 0, 1, ...
  r.x[0] = 0.8;
  r.x[1] = 0.7;
  r.x[1] = 0.85;
  // a second record so labels 0..2 each have a positive and a negative
  PredictionRecord s{"s", std::vector<double>(22, 0.0), std::vector<int>(22, 0)};
  s.y[1] = 1;
  s.x[1] = 1.0;
  const auto m = evaluate({r, s}, 3);
  CHECK(m.precision_at_k == doctest::Approx((2.0 / 3.0 + 1.0 / 3.0) / 2));
  const double dcg = 1.0 + 1.0 / std::log2(4.0);
  CHECK(m.ndcg_at_k == doctest::Approx((dcg / (1.0 + 1.0 / std::log2(3.0)) + 1.0) / 2));
  CHECK(m.auc == 1.0);
  CHECK_THROWS_AS(evaluate({r}, 3), Error);
  CHECK_THROWS_AS(evaluate({r, s}, 23), Error);

  PredictionRecord perfect{"q", std::vector<double>(22, 0.0), std::vector<int>(22, 0)};
  PredictionRecord other{"r", std::vector<double>(22, 0.0), std::vector<int>(22, 0)};
  perfect.y[4] = 1;
  perfect.x[4] = 1.0;
  other.y[5] = 1;
  other.x[5] = 1.0;
  const auto pm = evaluate({perfect, other}, 1);
  CHECK(pm.precision_at_k == 1.0);
  CHECK(pm.ndcg_at_k == 1.0);
  CHECK(pm.auc == 1.0);
  const auto table = format_metrics_table({{"model", {perfect, other}}});
  CHECK(table.find("100.00") != std::string::npos);
}

TEST_CASE("rank-statistic AUC equals the all-pairs oracle") {
  Rng rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng.below(12);
    std::vector<double> s(n);
    std::vector<int> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = static_cast<double>(rng.below(5));  // many ties
      y[i] = static_cast<int>(i % 2);
    }
    rng.shuffle(y);
    double wins = 0.0, pairs = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (y[i] != 1 || y[j] != 0) continue;
        pairs += 1;
        wins += s[i] > s[j] ? 1.0 : s[i] == s[j] ? 0.5 : 0.0;
      }
    }
    CHECK(auc_rank_statistic(s, y) == doctest::Approx(wins / pairs));
  }
  CHECK_THROWS_AS(auc_rank_statistic(std::vector<double>{1, 2}, std::vector<int>{1, 1}), Error);
}

TEST_CASE("precision and ndcg are invariant under monotone score transforms") {
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<PredictionRecord> recs, transformed;
    for (int k = 0; k < 4; ++k) {
      PredictionRecord r{"p" + std::to_string(k), std::vector<double>(22), std::vector<int>(22, 0)};
      for (int i = 0; i < 22; ++i) {
        r.x[i] = rng.uniform();
        r.y[i] = rng.bernoulli(0.2) ? 1 : 0;
      }
      r.y[static_cast<std::size_t>(k)] = 1;
      recs.push_back(r);
      for (auto& v : r.x) v = std::exp(3.0 * v) - 7.0;
      transformed.push_back(r);
    }
    for (std::size_t k : {1, 3, 5}) {
      const auto a = evaluate(recs, k);
      const auto b = evaluate(transformed, k);
      CHECK(a.precision_at_k == b.precision_at_k);
      CHECK(a.ndcg_at_k == b.ndcg_at_k);
      CHECK(a.auc == b.auc);
    }
  }
}

TEST_CASE("training set parsing") {
  const auto set = parse_training_lines({"p1\t3,5\tTitle\tAbs\\ttract", "", "p2\t99\tT\tA", "p3\t1\tT"});
  REQUIRE(set.records.size() == 1);
  CHECK(set.records[0].labels == std::vector<std::size_t>{3, 5});
  CHECK(set.records[0].abstract == "Abs\ttract");
  CHECK(set.warnings.size() == 2);
  CHECK(format_training_line(set.records[0]) == "p1\t3,5\tTitle\tAbs\\ttract");
}
