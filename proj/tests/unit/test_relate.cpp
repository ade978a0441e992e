#include <doctest.h>

#include <cmath>

#include "skg/common/error.hpp"
#include "skg/common/text.hpp"
#include "skg/relate/evaluate.hpp"
#include "skg/relate/relation_model.hpp"
#include "skg/relate/triples.hpp"
#include "support.hpp"

using namespace skg;
using namespace skg::relate;
using skg::testing::numeric_gradient;
using skg::testing::relative_error;

namespace {

extract::GlossaryEntry entry(std::string id, std::string name) {
  return {std::move(id), std::move(name), "description", 0, extract::EntitySource::glossary};
}

double accuracy(const RelationModel& m, const std::vector<RelationAnnotation>& test) {
  double hits = 0;
  for (const auto& a : test) hits += predict_relation(a.sentence, a.head, a.tail, m).label == a.label;
  return hits / static_cast<double>(test.size());
}

}  // namespace

TEST_CASE("triple files") {
  CHECK(parse_triple_lines({}).triples.empty());
  const auto f = parse_triple_lines({
      "P1\tSARS-CoV-2\tcauses\tpneumonia\tSARS-CoV-2 causes pneumonia in adults",
      "P1\tvaccine\treduces\tmortality\tThe vaccine reduces mortality",
      "P2\tmask\tlowers\tspread\tA mask lowers spread",
      "P2\tfever\tprecedes\tcough\tFever often precedes cough",
      "P3\tfever\tprecedes\tcough\tthe tail word is missing here",
  });
  CHECK(f.triples.size() == 4);
  REQUIRE(f.warnings.size() == 1);
  CHECK(f.warnings[0].line == 5);
  const RawTriple tabbed{"P", "a\tb", "r", "c", "a\tb r c"};
  CHECK(parse_triple_lines({format_triple_line(tabbed)}).triples.at(0).head == "a\tb");
}

TEST_CASE("alignment against the glossary") {
  const NameMap names({entry("K7", "SARS-CoV-2"), entry("K2", "Pneumonia"), entry("K9", "fever"),
                       entry("K3", "Fever")});
  CHECK(names.ambiguous() == 1);
  CHECK(names.find("FEVER") == std::optional<std::string>("K3"));

  const RawTriple t{"P1", "SARS-CoV-2", "causes", "pneumonia", "SARS-CoV-2 causes pneumonia"};
  const auto a = align(t, names);
  REQUIRE(a.has_value());
  CHECK(a->h == "K7");
  CHECK(a->t == "K2");
  CHECK(a->r_surface == "causes");
  CHECK_FALSE(align({"P1", "SARS-CoV-2", "causes", "ARDS", "SARS-CoV-2 causes ARDS"}, names));
  CHECK_FALSE(align({"P1", "fever", "is", "Fever", "fever is Fever"}, names));
}

TEST_CASE("relation annotation files") {
  const auto f = parse_relation_annotation_lines(
      {"virus\tcauses\tfever\timpact\tThe virus causes fever", "a\tb\tc\tcauses\ta b c", "a\tb\tc\tis_A"});
  REQUIRE(f.annotations.size() == 1);
  CHECK(f.annotations[0].label == RelationLabel::impact);
  CHECK(f.annotations[0].sentence == "The virus causes fever");
  CHECK(f.warnings.size() == 2);
  CHECK(parse_relation_annotation_lines({format_relation_annotation_line(f.annotations[0])})
            .annotations.at(0)
            .tail == "fever");
}

TEST_CASE("segment mask marks head and tail tokens") {
  const TokenVocab vocab({"<unk>", "causes", "pneumonia", "virus"});
  const auto in = encode_input("Virus causes severe pneumonia", "virus", "pneumonia", vocab);
  CHECK(in.segment == std::vector<int>{1, 0, 0, 1});
  CHECK(in.token_ids == std::vector<std::size_t>{3, 1, 0, 2});
  const auto degenerate = encode_input("Virus causes severe pneumonia", "absent", "gone", vocab);
  CHECK(degenerate.segment == std::vector<int>{0, 0, 0, 0});
  const auto first_only = encode_input("virus and virus", "virus", "and", vocab);
  CHECK(first_only.segment == std::vector<int>{1, 1, 0});

  std::string longest;
  for (int i = 0; i < 200; ++i) longest += "w ";
  CHECK(encode_input(longest, "x", "y", vocab).token_ids.size() == kMaxTokens);
}

TEST_CASE("encoding is deterministic and sensitive to the mask") {
  const auto ann = testing::marker_annotations(40, 5);
  const auto m = init_relation_model(build_token_vocab(ann), 6, 17);
  CHECK(m == init_relation_model(build_token_vocab(ann), 6, 17));
  Rng rng(21);
  for (const auto& a : ann) {
    auto in = encode_input(a.sentence, a.head, a.tail, m.vocab);
    const Eigen::VectorXd h = m.encode(in);
    CHECK(h == m.encode(encode_input(a.sentence, a.head, a.tail, m.vocab)));
    // flipping one mask bit moves h by exactly the segment difference / n
    const std::size_t i = rng.below(in.segment.size());
    const double sign = in.segment[i] ? -1.0 : 1.0;
    in.segment[i] = 1 - in.segment[i];
    const Eigen::VectorXd moved = m.encode(in);
    const Eigen::VectorXd expected =
        h + sign * (m.segment_emb.row(1) - m.segment_emb.row(0)).transpose() / static_cast<double>(in.segment.size());
    CHECK(moved != h);
    CHECK(relative_error(moved, expected) < 1e-12);
  }
  CHECK_THROWS_AS(m.encode(EncodedInput{}), Error);
}

TEST_CASE("softmax by hand") {
  CHECK(softmax(Eigen::Vector4d::Zero()).isApprox(Eigen::Vector4d::Constant(0.25)));
  const Eigen::VectorXd p = softmax(Eigen::Vector4d(1, 0, 0, 0));
  const double e = std::exp(1.0);
  CHECK(p(0) == doctest::Approx(e / (e + 3)));
  CHECK(p(1) == doctest::Approx(1 / (e + 3)));

  const auto ann = testing::marker_annotations(10, 1);
  auto m = init_relation_model(build_token_vocab(ann), 4, 2);
  m.w.setZero();
  const Eigen::VectorXd h = Eigen::VectorXd::Constant(4, 0.3);
  CHECK(relate::classify(h, m).isApprox(Eigen::Vector4d::Constant(0.25)));
  m.w(2, 0) = 100.0;
  Eigen::Index best = 0;
  relate::classify(h, m).maxCoeff(&best);
  CHECK(best == 2);
}

TEST_CASE("softmax is a distribution and shift invariant") {
  Rng rng(8);
  for (int trial = 0; trial < 500; ++trial) {
    Eigen::VectorXd z(4);
    for (auto& v : z) v = rng.normal() * std::pow(10.0, static_cast<double>(rng.below(4)));
    const Eigen::VectorXd p = softmax(z);
    CHECK(std::abs(p.sum() - 1.0) < 1e-9);
    CHECK(p.minCoeff() >= 0.0);
    CHECK(p.allFinite());
    const double c = rng.normal() * 50;
    CHECK(relative_error(softmax(z.array() + c), p) < 1e-9);
  }
  const Eigen::VectorXd big = softmax(Eigen::Vector4d(1000, 999, 0, -1000));
  CHECK(big.allFinite());
  CHECK(big(0) == doctest::Approx(1 / (1 + std::exp(-1.0))));
}

TEST_CASE("relation objective gradient over all parameters") {
  const auto ann = testing::marker_annotations(6, 3);
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    RelationModel m = init_relation_model(build_token_vocab(ann), 3, seed);
    m.w *= 10.0;  // away from the flat start so every block matters
    std::vector<RelationExample> batch;
    for (const auto& a : ann) batch.push_back({encode_input(a.sentence, a.head, a.tail, m.vocab), static_cast<std::size_t>(a.label)});
    RelationGradient g;
    relation_objective(m, batch, &g);
    RelationModel probe = m;
    const std::vector<Eigen::MatrixXd*> parts{&probe.token_emb, &probe.segment_emb, &probe.position_emb, &probe.w};
    const auto f = [&](const Eigen::VectorXd& v) {
      testing::unflatten(v, parts);
      return relation_objective(probe, batch, nullptr);
    };
    const auto x = testing::flatten({&m.token_emb, &m.segment_emb, &m.position_emb, &m.w});
    const auto analytic = testing::flatten({&g.token_emb, &g.segment_emb, &g.position_emb, &g.w});
    CHECK(relative_error(analytic, numeric_gradient(f, x)) < 1e-5);
  }
}

TEST_CASE("relation training") {
  auto ann = testing::marker_annotations(300, 11);
  RelationTrainConfig cfg;
  cfg.epochs = 0;
  CHECK(train_relation(ann, cfg) == init_relation_model(build_token_vocab(ann), cfg.dim, mix_seed(cfg.seed, 0)));

  cfg.epochs = 40;
  RelationTrainReport report;
  const auto m = train_relation(ann, cfg, &report);
  CHECK(report.epoch_loss.size() == 40);
  CHECK(report.epoch_loss.back() < report.epoch_loss.front());
  CHECK(m == train_relation(ann, cfg));
  CHECK(accuracy(m, testing::marker_annotations(200, 12)) > 0.95);

  for (auto& a : ann) a.label = RelationLabel::impact;
  CHECK_THROWS_AS(train_relation(ann, cfg), Error);
}

TEST_CASE("macro precision and recall by hand") {
  using L = RelationLabel;
  const std::vector<L> gold{L::is_A, L::is_A, L::impact, L::related_to, L::related_to, L::related_to};
  const std::vector<L> pred{L::is_A, L::impact, L::impact, L::related_to, L::is_A, L::unknown};
  const auto m = evaluate_relations(pred, gold);
  CHECK(m.precision == doctest::Approx(2.0 / 3.0));
  CHECK(m.recall == doctest::Approx(11.0 / 18.0));

  const auto abstain = evaluate_relations(std::vector<L>(6, L::unknown), gold);
  CHECK(abstain.precision == 0.0);
  CHECK(abstain.recall == 0.0);
  CHECK(evaluate_relations(gold, gold).precision == 1.0);
  CHECK_THROWS_AS(evaluate_relations({}, {}), Error);
  CHECK_THROWS_AS(evaluate_relations({L::is_A}, gold), Error);
}

TEST_CASE("relation model and edge files round-trip") {
  const auto ann = testing::marker_annotations(50, 4);
  RelationTrainConfig cfg;
  cfg.epochs = 2;
  const auto m = train_relation(ann, cfg);
  CHECK(RelationModel::deserialize(m.serialize()) == m);
  CHECK_THROWS_AS(RelationModel::deserialize("garbage"), Error);

  const std::vector<RelationEdge> edges{{"K1", RelationLabel::is_A, "K2", "P1"},
                                        {"K3", RelationLabel::related_to, "K1", "P2"}};
  const auto text = format_edge_lines(edges);
  std::vector<std::string> lines;
  for (const auto& l : text::split(text, '\n')) {
    if (!l.empty()) lines.push_back(l);
  }
  const auto back = parse_edge_lines(lines);
  REQUIRE(back.size() == 2);
  CHECK(back[1].label == RelationLabel::related_to);
  CHECK(back[1].paper_id == "P2");
}
