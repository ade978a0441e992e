#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "skg/common/error.hpp"
#include "skg/common/io.hpp"
#include "skg/common/text.hpp"
#include "skg/extract/esa_index.hpp"
#include "skg/extract/features.hpp"
#include "skg/extract/glossary.hpp"
#include "skg/extract/lambdarank.hpp"
#include "skg/extract/ndcg.hpp"
#include "skg/extract/ranker.hpp"
#include "skg/extract/tagging.hpp"
#include "support.hpp"

using namespace skg;
using namespace skg::extract;
using skg::testing::numeric_gradient;
using skg::testing::relative_error;

namespace {

GlossaryEntry entry(std::string id, std::string name, std::string description) {
  return {std::move(id), std::move(name), std::move(description), 0, EntitySource::glossary};
}

// Straight from the formula: tf = count / length, idf = ln(N / df) with
// df = 1 for words no description uses, cosine of the two tf-idf vectors.
double oracle_cosine(const std::vector<GlossaryEntry>& g, const std::string& doc, const std::string& query) {
  std::map<std::string, double> df;
  for (const auto& e : g) {
    const auto w = text::words(e.description);
    for (const auto& t : std::set<std::string>(w.begin(), w.end())) df[t] += 1;
  }
  const double n = static_cast<double>(g.size());
  const auto vec = [&](const std::string& s) {
    std::map<std::string, double> v;
    const auto w = text::words(s);
    for (const auto& t : w) v[t] += 1.0 / static_cast<double>(w.size());
    for (auto& [t, x] : v) x *= std::log(n / (df.count(t) ? df[t] : 1.0));
    return v;
  };
  const auto a = vec(doc), b = vec(query);
  double dot = 0, na = 0, nb = 0;
  for (const auto& [t, x] : a) {
    na += x * x;
    if (b.count(t)) dot += x * b.at(t);
  }
  for (const auto& [t, x] : b) nb += x * x;
  return na == 0 || nb == 0 ? 0.0 : dot / std::sqrt(na * nb);
}

double brute_force_ndcg(const std::vector<int>& labels, std::size_t k) {
  const auto dcg = [&](const std::vector<int>& order) {
    double s = 0;
    for (std::size_t r = 0; r < std::min(k, order.size()); ++r) {
      if (order[r] > 0) s += 1.0 / std::log2(static_cast<double>(r) + 2.0);
    }
    return s;
  };
  std::vector<int> perm = labels;
  std::sort(perm.begin(), perm.end());
  double best = 0;
  do best = std::max(best, dcg(perm));
  while (std::next_permutation(perm.begin(), perm.end()));
  return best == 0 ? 1.0 : dcg(labels) / best;
}

Eigen::VectorXd pack(const RankerModel& m) {
  Eigen::VectorXd v(m.w1.size() + m.b1.size() + m.w2.size() + 1);
  v << Eigen::Map<const Eigen::VectorXd>(m.w1.data(), m.w1.size()), m.b1, m.w2, m.b2;
  return v;
}

Eigen::VectorXd pack(const RankerGradient& g) {
  Eigen::VectorXd v(g.w1.size() + g.b1.size() + g.w2.size() + 1);
  v << Eigen::Map<const Eigen::VectorXd>(g.w1.data(), g.w1.size()), g.b1, g.w2, g.b2;
  return v;
}

void unpack(const Eigen::VectorXd& v, RankerModel& m) {
  const Eigen::Index a = m.w1.size(), b = m.b1.size(), c = m.w2.size();
  Eigen::Map<Eigen::VectorXd>(m.w1.data(), a) = v.segment(0, a);
  m.b1 = v.segment(a, b);
  m.w2 = v.segment(a + b, c);
  m.b2 = v(a + b + c);
}

const std::vector<GlossaryEntry> kFive{
    entry("K1", "spike protein", "spike protein binds the receptor on host cells"),
    entry("K2", "mask mandate", "mask mandate policy requires face masks in public"),
    entry("K3", "viral load", "viral load measures virus copies in a sample"),
    entry("K4", "school closure", "school closure policy moves students to remote classes"),
    entry("K5", "herd immunity", "herd immunity arises when enough people are immune to the virus"),
};

}  // namespace

TEST_CASE("esa index: construction errors and orthogonal descriptions") {
  CHECK_THROWS_AS(EsaIndex({}), Error);
  CHECK_THROWS_AS(EsaIndex({entry("K1", "a", "x"), entry("K1", "b", "y")}), Error);
  EsaIndex two({entry("K1", "a", "alpha beta"), entry("K2", "b", "gamma delta")});
  CHECK(two.description_similarity(0, 1) == 0.0);
  CHECK(two.description_similarity(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("esa scores equal the hand tf-idf cosine") {
  const std::vector<GlossaryEntry> g{entry("K1", "vaccine", "vaccine trial with vaccine doses"),
                                     entry("K2", "trial", "randomised trial of a drug"),
                                     entry("K3", "drug", "drug doses in patients")};
  EsaIndex index(g);
  for (const std::string q : {"vaccine doses", "a trial of a drug in patients", "drug drug vaccine unknownword"}) {
    const auto cands = index.candidates(q, 10);
    for (const auto& c : cands) {
      const auto* e = index.find(c.entity_id);
      REQUIRE(e != nullptr);
      CHECK(c.esa_score == doctest::Approx(oracle_cosine(g, e->description, q)).epsilon(1e-12));
    }
    std::size_t positive = 0;
    for (const auto& e : g) positive += oracle_cosine(g, e.description, q) > 0;
    CHECK(cands.size() == positive);
  }
}

TEST_CASE("candidates: golden order on a five-entity corpus") {
  EsaIndex index(kFive);
  const std::string abstract = "A policy of school closure and a mask mandate lowered the virus viral load.";
  const auto cands = index.candidates(abstract, 50);
  std::vector<std::pair<double, std::string>> expected;
  for (const auto& e : kFive) {
    const double s = oracle_cosine(kFive, e.description, abstract);
    if (s > 0) expected.push_back({-s, e.entity_id});
  }
  std::sort(expected.begin(), expected.end());
  REQUIRE(cands.size() == expected.size());
  for (std::size_t i = 0; i < cands.size(); ++i) CHECK(cands[i].entity_id == expected[i].second);
  CHECK(cands.front().entity_id == "K3");
  REQUIRE(cands.front().matched_span.has_value());
  CHECK(abstract.substr(cands.front().matched_span->begin, 10) == "viral load");

  CHECK(index.candidates(kFive[1].description).front().entity_id == "K2");
  CHECK(index.candidates("completely unrelated words").empty());
  CHECK(index.candidates("").empty());
  CHECK(index.candidates(abstract, 2).size() == 2);
}

TEST_CASE("candidates are positive and totally ordered") {
  EsaIndex index(kFive);
  Rng rng(4);
  std::vector<std::string> words;
  for (const auto& e : kFive) {
    for (const auto& w : text::words(e.description)) words.push_back(w);
  }
  for (int trial = 0; trial < 200; ++trial) {
    std::string q;
    for (std::size_t i = rng.below(12); i > 0; --i) q += words[rng.below(words.size())] + " ";
    const auto c = index.candidates(q);
    for (std::size_t i = 0; i < c.size(); ++i) {
      CHECK(c[i].esa_score > 0.0);
      if (i > 0) {
        const bool ordered = c[i - 1].esa_score > c[i].esa_score ||
                             (c[i - 1].esa_score == c[i].esa_score && c[i - 1].entity_id < c[i].entity_id);
        CHECK(ordered);
      }
    }
  }
}

TEST_CASE("find_verbatim matches whole words only") {
  CHECK(find_verbatim("The Viral Load rose", "viral load") == Span{4, 14});
  CHECK_FALSE(find_verbatim("viral loads", "viral load").has_value());
  CHECK_FALSE(find_verbatim("preload", "load").has_value());
  CHECK(find_verbatim("covid-19 vaccine.", "COVID-19 vaccine") == Span{0, 16});
}

TEST_CASE("rank features") {
  const std::vector<GlossaryEntry> g{entry("K1", "COVID-19 vaccine", "the covid-19 vaccine trial"),
                                     entry("K2", "the", "the drug"), entry("K3", "drug", "the drug dose")};
  EsaIndex index(g);
  const auto f = features({"K1", 0.5, std::nullopt}, g[0], index);
  CHECK(f.tfidf_score == 0.5);
  CHECK(f.length == 2.0);
  CHECK(f.letter_count == 12.0);
  // name tokens covid, 19, vaccine; each appears in one description of three
  CHECK(f.complexity == doctest::Approx(std::log(3.0)));
  const auto stop = features({"K2", 0.1, std::nullopt}, g[1], index);
  CHECK(stop.complexity == 0.0);
  const auto drug = features({"K3", 0.25, std::nullopt}, g[2], index);
  CHECK(drug.as_array() == std::array<double, 4>{0.25, 1.0, std::log(3.0 / 2.0), 4.0});
}

TEST_CASE("ranker forward pass by hand") {
  RankerModel m = init_ranker(2, 1.0, 1);
  m.w1.setZero();
  m.b1.setZero();
  m.w2.setZero();
  m.b2 = 0.75;
  CHECK(m.score({0.3, 2, 1, 9}) == 0.75);
  m.w1 << 1, 0, 0, 0,  //
      0, 1, -1, 0;
  m.b1 << 0.5, 0.0;
  m.w2 << 2.0, 3.0;
  m.b2 = -1.0;
  // relu(0.3 + 0.5) = 0.8, relu(2 - 5) = 0
  CHECK(m.score({0.3, 2, 5, 9}) == doctest::Approx(2.0 * 0.8 - 1.0));
  // relu(0.8), relu(2 - 1) = 1
  CHECK(m.score({0.3, 2, 1, 9}) == doctest::Approx(2.0 * 0.8 + 3.0 - 1.0));
  const auto back = RankerModel::deserialize(m.serialize());
  CHECK(back == m);
}

TEST_CASE("ndcg examples and the brute-force oracle") {
  CHECK(ndcg(std::vector<int>{1, 1, 0}, 3) == 1.0);
  CHECK(ndcg(std::vector<int>{0, 1}, 2) == doctest::Approx(0.6309).epsilon(1e-4));
  CHECK(ndcg(std::vector<int>{0, 0, 0}, 2) == 1.0);
  CHECK_THROWS_AS(ndcg(std::vector<int>{1}, 0), Error);
  std::size_t lists = 0;
  for (std::size_t len = 1; len <= 7; ++len) {
    for (std::size_t mask = 0; mask < (1u << len); ++mask) {
      std::vector<int> labels(len);
      for (std::size_t i = 0; i < len; ++i) labels[i] = (mask >> i) & 1;
      for (std::size_t k = 1; k <= len + 1; ++k) {
        const double v = ndcg(labels, k);
        CHECK(v == doctest::Approx(brute_force_ndcg(labels, k)).epsilon(1e-12));
        CHECK(v >= 0.0);
        CHECK(v <= 1.0 + 1e-15);
      }
      ++lists;
    }
  }
  CHECK(lists == 254);
}

TEST_CASE("ndcg ignores the order among equally labelled items") {
  Rng rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng.below(8);
    std::vector<double> scores(n);
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
      scores[i] = rng.uniform();
      labels[i] = rng.bernoulli(0.4);
    }
    const double before = ndcg(labels_by_score(scores, labels), 5);
    // swap the scores of two items sharing a label
    const std::size_t i = rng.below(n), j = rng.below(n);
    if (labels[i] != labels[j]) continue;
    std::swap(scores[i], scores[j]);
    CHECK(ndcg(labels_by_score(scores, labels), 5) == before);
  }
}

TEST_CASE("lambdarank loss by hand") {
  const std::vector<int> labels{1, 0, 0};
  const std::vector<double> scores{0.2, 0.5, -0.1};
  const auto pairs = preference_pairs(labels);
  REQUIRE(pairs.size() == 2);
  // order by score: item1, item0, item2. The positive sits at rank 2.
  const double ideal = 1.0;
  const double d01 = std::abs(1.0 - 1.0 / std::log2(3.0)) / ideal;  // swap to rank 1
  const double d02 = std::abs(0.5 - 1.0 / std::log2(3.0)) / ideal;  // positive falls to rank 3
  const double expected = std::log1p(std::exp(-(0.2 - 0.5))) * d01 + std::log1p(std::exp(-(0.2 + 0.1))) * d02;
  const auto r = lambdarank_loss(pairs, scores, labels, 3, 1.0);
  CHECK(r.loss == doctest::Approx(expected));
  CHECK(delta_ndcg(labels, rank_positions(scores), 0, 1, 3) == doctest::Approx(d01));

  CHECK_THROWS_AS(lambdarank_loss(std::vector<RankPair>{{1, 2}}, scores, labels, 3, 1.0), Error);

  // widening the margin of a correctly ordered pair drives its loss to 0
  const std::vector<int> two{1, 0};
  const auto p2 = preference_pairs(two);
  double prev = std::numeric_limits<double>::infinity();
  for (double gap : {-2.0, 0.0, 2.0, 10.0, 40.0}) {
    const auto l = lambdarank_loss(p2, std::vector<double>{gap, 0.0}, two, 2, 1.0);
    CHECK(l.loss <= prev);
    prev = l.loss;
  }
}

TEST_CASE("lambdarank gradient and monotonicity on random lists") {
  Rng rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 3 + rng.below(6);
    std::vector<int> labels(n);
    std::vector<double> scores(n);
    for (std::size_t i = 0; i < n; ++i) {
      labels[i] = i == 0 ? 1 : i == 1 ? 0 : rng.bernoulli(0.4);
      scores[i] = rng.normal();
    }
    const auto pairs = preference_pairs(labels);
    const auto r = lambdarank_loss(pairs, scores, labels, 5, 1.0);
    // the swap weights follow the ordering, which a small step does not change
    const auto f = [&](const Eigen::VectorXd& s) {
      return lambdarank_loss(pairs, std::vector<double>(s.data(), s.data() + s.size()), labels, 5, 1.0).loss;
    };
    const Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(scores.data(), static_cast<Eigen::Index>(n));
    const Eigen::VectorXd g = Eigen::Map<const Eigen::VectorXd>(r.grad.data(), static_cast<Eigen::Index>(n));
    CHECK(relative_error(g, numeric_gradient(f, x)) < 1e-4);
    for (const auto& p : pairs) {
      if (scores[p.i] >= scores[p.j]) continue;
      CHECK(r.grad[p.i] <= 0.0);
      auto bumped = scores;
      bumped[p.i] += 1e-4;
      CHECK(lambdarank_loss(pairs, bumped, labels, 5, 1.0).loss <= r.loss);
    }
  }
}

TEST_CASE("ranker objective gradient over all parameters") {
  const auto groups = testing::separable_rank_groups(4, 3);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    RankerModel m = init_ranker(5, 1.0, seed);
    RankerGradient grad;
    ranker_objective(m, groups, 5, &grad);
    RankerModel probe = m;
    const auto f = [&](const Eigen::VectorXd& v) {
      unpack(v, probe);
      return ranker_objective(probe, groups, 5, nullptr);
    };
    CHECK(relative_error(pack(grad), numeric_gradient(f, pack(m))) < 1e-4);
  }
}

TEST_CASE("ranker training") {
  RankerConfig cfg;
  cfg.epochs = 0;
  const auto train_groups = testing::separable_rank_groups(60, 1);
  CHECK(train_ranker(train_groups, cfg) == init_ranker(cfg.hidden, cfg.sigma, mix_seed(cfg.seed, 0)));

  cfg.epochs = 60;
  RankerReport report;
  auto groups = train_groups;
  groups.push_back({"onlyneg", {{0.1, 1, 1, 3}}, {0}});
  const auto model = train_ranker(groups, cfg, &report);
  CHECK(report.groups_used == 60);
  CHECK(report.warnings.size() == 1);
  CHECK(model == train_ranker(groups, cfg));
  CHECK(mean_ndcg(model, testing::separable_rank_groups(100, 2), 5) == 1.0);
}

TEST_CASE("tagging metrics and thresholds") {
  const GoldSet gold{{"p", "a"}, {"p", "b"}, {"q", "c"}, {"q", "d"}};
  const std::vector<Tag> two{{"p", "a", 0.9}, {"p", "x", 0.8}};
  const auto m = evaluate_tagging(two, gold);
  CHECK(m.precision == 0.5);
  CHECK(m.recall == 0.25);
  std::vector<Tag> all;
  for (const auto& [p, e] : gold) all.push_back({p, e, 1.0});
  CHECK(evaluate_tagging(all, gold).precision == 1.0);
  CHECK(evaluate_tagging(all, gold).recall == 1.0);
  CHECK(evaluate_tagging({}, gold).precision == 0.0);
  CHECK_THROWS_AS(evaluate_tagging(all, {}), Error);

  // scores: a .9 (gold), x .8, b .7 (gold), y .6, c .5 (gold)
  const std::vector<Tag> scored{{"p", "a", 0.9}, {"p", "x", 0.8}, {"p", "b", 0.7}, {"q", "y", 0.6}, {"q", "c", 0.5}};
  const auto choice = sweep_threshold(scored, gold, 0.2);
  CHECK(choice.threshold == 0.9);
  CHECK(choice.precision == 1.0);
  CHECK(choice.recall == 0.25);
  const auto wider = sweep_threshold(scored, gold, 0.5);
  CHECK(wider.threshold == 0.7);
  CHECK(wider.precision == doctest::Approx(2.0 / 3.0));
  const auto none = sweep_threshold(scored, gold, 0.9);
  CHECK(none.threshold == 0.5);
}

TEST_CASE("tag: threshold monotonicity and the infinite threshold") {
  EsaIndex index(kFive);
  const auto model = init_ranker(4, 1.0, 3);
  const std::string text = "school closure and mask mandate policy changed viral load in students";
  CHECK(tag("p", text, index, model, std::numeric_limits<double>::infinity()).empty());
  const auto all = tag("p", text, index, model, -std::numeric_limits<double>::infinity());
  REQUIRE_FALSE(all.empty());
  for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1].score >= all[i].score);
  for (const auto& t1 : all) {
    std::set<std::string> lower;
    for (const auto& t : tag("p", text, index, model, t1.score)) lower.insert(t.entity_id);
    for (const auto& t2 : all) {
      if (t2.score < t1.score) continue;
      std::set<std::string> upper;
      for (const auto& t : tag("p", text, index, model, t2.score)) upper.insert(t.entity_id);
      CHECK(std::includes(lower.begin(), lower.end(), upper.begin(), upper.end()));
    }
  }
}

TEST_CASE("glossary, annotation and tag files") {
  const auto g = parse_glossary_lines({"# header", "K1\tspike protein\t5\tglossary\tbinds cells",
                                       "K2\tx\t99\tglossary\td", "K3\ty\t5\tnowhere\td", "K4\t\t5\twiki\td",
                                       "K5\tz\tEconomics\twiki\tmarkets"});
  REQUIRE(g.entries.size() == 2);
  CHECK(g.entries[1].discipline == 13);
  CHECK(g.warnings.size() == 3);
  CHECK(parse_glossary_lines({format_glossary_line(g.entries[0])}).entries[0].name == "spike protein");

  const auto a = parse_annotation_lines({"p\tK1\t1", "p\tK2\t0", "p\tK3\t2", "p\tK4"});
  CHECK(a.annotations.size() == 2);
  CHECK(a.warnings.size() == 2);
  CHECK(positive_annotations(a.annotations) == GoldSet{{"p", "K1"}});

  const auto dir = testing::fresh_dir("tags");
  const std::vector<Tag> tags{{"p", "K1", 0.5}, {"q", "K2", 0.25}};
  io::write_file(dir / "tags.tsv", format_tag_lines(tags));
  const auto back = read_tag_lines(dir / "tags.tsv");
  REQUIRE(back.size() == 2);
  CHECK(back[1].entity_id == "K2");
}

TEST_CASE("build_groups keeps annotated candidates, later lines win") {
  EsaIndex index(kFive);
  const std::vector<RankAnnotation> ann{{"p", "K3", 0}, {"p", "K3", 1}, {"p", "K2", 0}, {"p", "K1", 0},
                                        {"missing", "K1", 1}};
  std::vector<std::string> warnings;
  const auto groups = build_groups(
      ann,
      [](const std::string& id) -> std::optional<std::string> {
        if (id == "p") return "virus viral load and mask mandate";
        return std::nullopt;
      },
      index, 50, &warnings);
  REQUIRE(groups.size() == 1);
  CHECK(warnings.size() == 1);
  // K1 (spike protein) is not a candidate for this text
  REQUIRE(groups[0].labels.size() == 2);
  CHECK(std::accumulate(groups[0].labels.begin(), groups[0].labels.end(), 0) == 1);
}
