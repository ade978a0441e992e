#include "skg/service/pipeline.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <set>
#include <sstream>

#include "skg/classify/dataset.hpp"
#include "skg/classify/metrics.hpp"
#include "skg/classify/model.hpp"
#include "skg/classify/train.hpp"
#include "skg/common/error.hpp"
#include "skg/common/hash.hpp"
#include "skg/common/hexfloat.hpp"
#include "skg/common/io.hpp"
#include "skg/common/rng.hpp"
#include "skg/common/text.hpp"
#include "skg/corpus/fuse.hpp"
#include "skg/corpus/gazetteer.hpp"
#include "skg/corpus/ingest.hpp"
#include "skg/corpus/locations.hpp"
#include "skg/corpus/normalize.hpp"
#include "skg/extract/esa_index.hpp"
#include "skg/extract/glossary.hpp"
#include "skg/extract/ranker.hpp"
#include "skg/extract/tagging.hpp"
#include "skg/geo/geo_index.hpp"
#include "skg/geo/geohash.hpp"
#include "skg/kgstore/graph.hpp"
#include "skg/kgstore/graph_log.hpp"
#include "skg/kgstore/ntriples.hpp"
#include "skg/netsci/degree_stats.hpp"
#include "skg/netsci/network.hpp"
#include "skg/relate/evaluate.hpp"
#include "skg/relate/relation_model.hpp"
#include "skg/relate/triples.hpp"
#include "skg/service/views.hpp"

namespace skg::service {

namespace fs = std::filesystem;
using kg::ConceptKind;
using kg::RelationKind;

namespace {

constexpr std::array<std::string_view, 12> kStageNames{
    "ingest",  "fuse",     "classify-train", "classify",  "extract-train", "extract",
    "relate-train", "relate", "build-kg",   "geo-index", "netsci",        "export"};

// Stream ids for mix_seed, one per trained or sampled component.
enum SeedStream : std::uint64_t { kClassifySeed = 1, kRankerSeed = 2, kRelationSeed = 3, kNetsciSeed = 4 };

std::string paper_text(const corpus::PaperRecord& p) { return p.title + " " + p.abstract; }

// Deterministic 1-in-5 hold-out by content hash, independent of the seed.
bool held_out(std::string_view key) {
  const std::string h = content_hash128(key);
  return std::stoul(h.substr(0, 8), nullptr, 16) % 5 == 0;
}

std::string format_diagnostics(const fs::path& file, const Diagnostics& ds) {
  std::string out;
  for (const auto& d : ds) {
    out += file.string() + ":" + std::to_string(d.line) + ": " + d.message + "\n";
  }
  return out;
}

std::string join_labels(const std::vector<std::size_t>& labels) {
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(labels[i]);
  }
  return out;
}

std::string fixed(double v, int digits = 4) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(digits);
  s << v;
  return s.str();
}

kg::NodeKey paper_key(const std::string& id) { return {ConceptKind::paper, id}; }
kg::NodeKey knowledge_key(const std::string& id) { return {ConceptKind::knowledge, id}; }

ConceptKind venue_concept(corpus::VenueKind k) {
  switch (k) {
    case corpus::VenueKind::journal: return ConceptKind::journal;
    case corpus::VenueKind::conference: return ConceptKind::conference;
    case corpus::VenueKind::preprint: return ConceptKind::preprint;
  }
  return ConceptKind::venue;
}

RelationKind relation_kind(relate::RelationLabel l) {
  switch (l) {
    case relate::RelationLabel::is_A: return RelationKind::is_A;
    case relate::RelationLabel::impact: return RelationKind::impact;
    default: return RelationKind::related_to;
  }
}

std::string topic_id(std::string_view name) { return text::fold_collapse(text::trim(name)); }

// Lines split on tabs, skipping blanks and '#' comments; `arity` fields each.
std::vector<std::pair<std::size_t, std::vector<std::string>>> tsv_rows(const fs::path& path,
                                                                      std::size_t arity) {
  std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
  std::size_t line_no = 0;
  for (const auto& line : io::read_lines(path)) {
    ++line_no;
    const auto t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto fields = text::split(line, '\t');
    if (fields.size() != arity) {
      throw Error(path.string() + ":" + std::to_string(line_no) + ": expected " +
                  std::to_string(arity) + " fields, found " + std::to_string(fields.size()));
    }
    for (auto& f : fields) f = text::unescape_field(f);
    rows.emplace_back(line_no, std::move(fields));
  }
  return rows;
}

struct OrgLocation {
  std::string org_id;
  std::string name;
  GeoPoint point;
};

std::vector<OrgLocation> read_org_locations(const fs::path& path) {
  std::vector<OrgLocation> out;
  for (const auto& [line, f] : tsv_rows(path, 4)) {
    out.push_back({f[0], f[1], {text::parse_double(f[2]), text::parse_double(f[3])}});
  }
  return out;
}

double read_threshold(const fs::path& path) {
  std::istringstream in(io::read_file(path));
  return read_hexfloat(in, path.string());
}

}  // namespace

std::string_view to_string(Stage s) { return kStageNames[static_cast<std::size_t>(s)]; }

std::optional<Stage> parse_stage(std::string_view s) {
  for (std::size_t i = 0; i < kStageNames.size(); ++i) {
    if (kStageNames[i] == s) return static_cast<Stage>(i);
  }
  return std::nullopt;
}

const std::vector<Stage>& all_stages() {
  static const std::vector<Stage> stages = [] {
    std::vector<Stage> v;
    for (std::size_t i = 0; i < kStageNames.size(); ++i) v.push_back(static_cast<Stage>(i));
    return v;
  }();
  return stages;
}

PaperRefs::PaperRefs(const corpus::FusedCorpus& corpus) {
  for (const auto& p : corpus.papers) {
    by_ref_[p.paper_id] = p.paper_id;
    if (p.doi) by_ref_["doi:" + *p.doi] = p.paper_id;
    for (const auto& prov : p.provenance) {
      by_ref_[std::string(corpus::to_string(prov.source)) + ":" + prov.external_id] = p.paper_id;
    }
  }
}

std::optional<std::string> PaperRefs::resolve(std::string_view ref) const {
  ref = text::trim(ref);
  if (ref.substr(0, 4) == "doi:") {
    const std::string key = "doi:" + corpus::normalize_doi(ref.substr(4));
    const auto it = by_ref_.find(key);
    return it == by_ref_.end() ? std::nullopt : std::optional(it->second);
  }
  const auto it = by_ref_.find(ref);
  return it == by_ref_.end() ? std::nullopt : std::optional(it->second);
}

std::map<std::string, std::vector<std::size_t>> read_disciplines(const fs::path& path) {
  std::map<std::string, std::vector<std::size_t>> out;
  for (const auto& [line, f] : tsv_rows(path, 2)) {
    auto& labels = out[f[0]];
    for (const auto& s : text::split(f[1], ',')) {
      const auto idx = classify::parse_discipline(s);
      if (!idx) throw Error(path.string() + ":" + std::to_string(line) + ": bad label " + s);
      labels.push_back(*idx);
    }
  }
  return out;
}

Pipeline::Pipeline(Config config, std::ostream& log)
    : config_(std::move(config)), layout_{config_.data_dir}, log_(log) {}

void Pipeline::note(const std::string& line) {
  log_ << "[" << to_string(current_) << "] " << line << "\n";
}

fs::path Pipeline::require_input(const std::string& name) const {
  const auto p = config_.input(name);
  if (!p) {
    throw Error("stage " + std::string(to_string(current_)) + ": no '" + name +
                "' input configured");
  }
  return require_file(*p);
}

fs::path Pipeline::require_file(const fs::path& path) const {
  if (!fs::is_regular_file(path)) {
    throw Error("stage " + std::string(to_string(current_)) + ": missing input file " +
                path.string());
  }
  return path;
}

void Pipeline::run(Stage stage) {
  current_ = stage;
  try {
    switch (stage) {
      case Stage::ingest: ingest(); break;
      case Stage::fuse: fuse(); break;
      case Stage::classify_train: classify_train(); break;
      case Stage::classify: classify(); break;
      case Stage::extract_train: extract_train(); break;
      case Stage::extract: extract(); break;
      case Stage::relate_train: relate_train(); break;
      case Stage::relate: relate(); break;
      case Stage::build_kg: build_kg(); break;
      case Stage::geo_index: geo_index(); break;
      case Stage::netsci: netsci(); break;
      case Stage::export_kg: export_kg(); break;
    }
  } catch (const Error& e) {
    const std::string msg = e.what();
    const std::string prefix = "stage " + std::string(to_string(stage)) + ":";
    if (msg.rfind(prefix, 0) == 0) throw;
    throw Error(prefix + " " + msg);
  }
}

void Pipeline::run_all() {
  for (Stage s : all_stages()) run(s);
}

void Pipeline::ingest() {
  std::string warnings;
  std::size_t feeds = 0;
  for (auto source : {corpus::SourceId::acemap, corpus::SourceId::cord19, corpus::SourceId::digsci,
                      corpus::SourceId::preprint}) {
    const std::string name(corpus::to_string(source));
    const fs::path out = layout_.ingest_dir() / (name + ".jsonl");
    const auto path = config_.input(name);
    if (!path) {
      fs::remove(out);
      continue;
    }
    ++feeds;
    const auto result = corpus::ingest_source(require_file(*path), source);
    std::string lines;
    for (const auto& r : result.records) lines += corpus::to_json_line(r) + "\n";
    io::write_file(out, lines);
    warnings += format_diagnostics(*path, result.warnings);
    note(name + ": " + std::to_string(result.records.size()) + " records, " +
         std::to_string(result.warnings.size()) + " rejected");
  }
  if (feeds == 0) throw Error("no source feed configured (acemap, cord19, digsci, preprint)");
  io::write_file(layout_.ingest_dir() / "warnings.txt", warnings);
}

void Pipeline::fuse() {
  std::vector<std::vector<corpus::SourceRecord>> feeds;
  std::string report = "source\trecords\n";
  for (auto source : {corpus::SourceId::acemap, corpus::SourceId::cord19, corpus::SourceId::digsci,
                      corpus::SourceId::preprint}) {
    const fs::path path = layout_.ingest_dir() / (std::string(corpus::to_string(source)) + ".jsonl");
    if (!fs::exists(path)) continue;
    auto result = corpus::ingest_source(path, source);
    if (!result.warnings.empty()) {
      throw Error(path.string() + ": ingested feed has malformed lines; rerun ingest");
    }
    report += std::string(corpus::to_string(source)) + "\t" +
              std::to_string(result.records.size()) + "\n";
    feeds.push_back(std::move(result.records));
  }
  if (feeds.empty()) throw Error("missing input file " + layout_.ingest_dir().string() + "/*.jsonl");

  const auto fused = corpus::fuse(feeds);
  corpus::write_corpus(layout_.corpus_dir(), fused);
  report += "fused\t" + std::to_string(fused.papers.size()) + "\n";
  report += "authors\t" + std::to_string(fused.authors.size()) + "\n";
  report += "organizations\t" + std::to_string(fused.orgs.size()) + "\n";
  report += "venues\t" + std::to_string(fused.venues.size()) + "\n";
  report += "conflicts\t" + std::to_string(fused.conflicts.size()) + "\n";

  std::vector<corpus::LocationMention> mentions;
  std::string org_lines;
  if (const auto gaz_path = config_.input("gazetteer")) {
    Diagnostics gaz_warnings;
    const auto gaz = corpus::Gazetteer::load(require_file(*gaz_path), &gaz_warnings);
    for (const auto& d : gaz_warnings) note(gaz_path->string() + ":" + std::to_string(d.line) + ": " + d.message);
    for (const auto& p : fused.papers) {
      auto found = corpus::tag_locations(p, gaz);
      mentions.insert(mentions.end(), found.begin(), found.end());
    }
    for (const auto& org : fused.orgs) {
      std::set<std::size_t> seen;
      for (const auto& m : corpus::match_places(org.display_name, gaz)) {
        if (!seen.insert(m.entry).second) continue;
        const auto& e = gaz.entries()[m.entry];
        org_lines += org.id + "\t" + text::escape_field(e.name) + "\t" +
                     text::format_double(e.point.lat) + "\t" + text::format_double(e.point.lon) + "\n";
      }
    }
  } else {
    note("no gazetteer configured; no locations tagged");
  }
  corpus::write_locations(layout_.locations(), mentions);
  io::write_file(layout_.org_locations(), org_lines);
  report += "location_mentions\t" + std::to_string(mentions.size()) + "\n";
  io::write_file(layout_.reports_dir() / "fusion.tsv", report);
  note(std::to_string(fused.papers.size()) + " papers, " + std::to_string(mentions.size()) +
       " location mentions");
}

void Pipeline::classify_train() {
  const auto path = require_input("training");
  const auto set = classify::read_training_set(path);
  for (const auto& d : set.warnings) note(path.string() + ":" + std::to_string(d.line) + ": " + d.message);

  std::vector<classify::TrainingRecord> train_records;
  std::vector<classify::TrainingRecord> test_records;
  for (const auto& r : set.records) (held_out(r.paper_id) ? test_records : train_records).push_back(r);
  if (train_records.empty()) throw Error(path.string() + ": no training records");

  classify::TrainConfig cfg;
  cfg.epochs = config_.classify_epochs;
  cfg.dim = config_.classify_dim;
  cfg.seed = mix_seed(config_.seed, kClassifySeed);
  classify::TrainReport report;
  const auto model = classify::train(classify::to_documents(train_records), cfg, &report);
  for (const auto& w : report.warnings) note(w);
  model.save(layout_.discipline_model());

  std::string out = "train\t" + std::to_string(train_records.size()) + "\nheld_out\t" +
                    std::to_string(test_records.size()) + "\nfinal_loss\t" +
                    fixed(report.epochs.empty() ? 0.0 : report.epochs.back().total(), 6) + "\n";
  std::vector<classify::PredictionRecord> records;
  for (const auto& r : test_records) {
    const auto pred = classify::predict(r.title + " " + r.abstract, model, config_.classify_threshold);
    classify::PredictionRecord rec{r.paper_id, {}, std::vector<int>(classify::kDisciplineCount, 0)};
    for (Eigen::Index i = 0; i < pred.probabilities.size(); ++i) rec.x.push_back(pred.probabilities[i]);
    for (auto l : r.labels) rec.y[l] = 1;
    records.push_back(std::move(rec));
  }
  if (!records.empty()) {
    try {
      out += classify::format_metrics_table({{"held-out", records}});
    } catch (const Error& e) {
      out += std::string("metrics unavailable: ") + e.what() + "\n";
    }
  }
  io::write_file(layout_.reports_dir() / "classify.txt", out);
  note("trained on " + std::to_string(train_records.size()) + " records");
}

void Pipeline::classify() {
  const auto model = classify::DisciplineModel::load(require_file(layout_.discipline_model()));
  const auto corpus = corpus::read_corpus(layout_.corpus_dir());
  std::string out;
  for (const auto& p : corpus.papers) {
    const auto pred = classify::predict(paper_text(p), model, config_.classify_threshold);
    out += p.paper_id + "\t" + join_labels(pred.labels) + "\n";
  }
  io::write_file(layout_.disciplines(), out);
  note(std::to_string(corpus.papers.size()) + " papers classified");
}

namespace {

// Annotations with paper references replaced by paper ids; unresolvable ones
// are dropped with a note.
std::vector<extract::RankAnnotation> resolve_annotations(const fs::path& path,
                                                         const PaperRefs& refs,
                                                         std::vector<std::string>& notes) {
  const auto file = extract::read_annotations(path);
  for (const auto& d : file.warnings) notes.push_back(path.string() + ":" + std::to_string(d.line) + ": " + d.message);
  std::vector<extract::RankAnnotation> out;
  for (auto a : file.annotations) {
    const auto id = refs.resolve(a.paper_id);
    if (!id) {
      notes.push_back(path.string() + ": unknown paper " + a.paper_id);
      continue;
    }
    a.paper_id = *id;
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace

void Pipeline::extract_train() {
  const auto glossary_path = require_input("glossary");
  const auto glossary = extract::read_glossary(glossary_path);
  for (const auto& d : glossary.warnings) note(glossary_path.string() + ":" + std::to_string(d.line) + ": " + d.message);
  const extract::EsaIndex index(glossary.entries);
  const auto corpus = corpus::read_corpus(layout_.corpus_dir());
  const PaperRefs refs(corpus);

  const auto& rounds = config_.inputs_of("annotations");
  if (rounds.empty()) throw Error("stage extract-train: no 'annotations' input configured");
  const auto validation_path = require_input("validation");

  std::vector<std::string> notes;
  const auto validation = resolve_annotations(validation_path, refs, notes);
  const auto gold = extract::positive_annotations(validation);
  if (gold.empty()) throw Error(validation_path.string() + ": no positive annotations");

  const auto text_of = [&](const std::string& id) -> std::optional<std::string> {
    const auto* p = corpus.find_paper(id);
    return p ? std::optional(paper_text(*p)) : std::nullopt;
  };
  auto validation_groups = extract::build_groups(validation, text_of, index, config_.extract_top_n, &notes);
  std::set<std::string> validation_papers;
  for (const auto& a : validation) validation_papers.insert(a.paper_id);

  extract::RankerConfig cfg;
  cfg.epochs = config_.extract_epochs;
  cfg.seed = mix_seed(config_.seed, kRankerSeed);

  // Each round retrains from scratch on every annotation file so far.
  std::vector<extract::RankAnnotation> annotations;
  std::string report = "round\tannotations\tgroups\ttrain_ndcg\tvalidation_ndcg\tthreshold\tprecision\trecall\n";
  extract::RankerModel model;
  extract::ThresholdChoice choice;
  for (std::size_t round = 0; round < rounds.size(); ++round) {
    const auto more = resolve_annotations(require_file(rounds[round]), refs, notes);
    annotations.insert(annotations.end(), more.begin(), more.end());
    const auto groups = extract::build_groups(annotations, text_of, index, config_.extract_top_n, &notes);
    extract::RankerReport rr;
    model = extract::train_ranker(groups, cfg, &rr);
    notes.insert(notes.end(), rr.warnings.begin(), rr.warnings.end());

    std::vector<extract::Tag> scored;
    for (const auto& id : validation_papers) {
      const auto text = text_of(id);
      if (!text) continue;
      auto tags = extract::tag(id, *text, index, model, -std::numeric_limits<double>::infinity(),
                               config_.extract_top_n);
      scored.insert(scored.end(), tags.begin(), tags.end());
    }
    choice = extract::sweep_threshold(scored, gold, config_.extract_min_recall);
    report += std::to_string(round + 1) + "\t" + std::to_string(annotations.size()) + "\t" +
              std::to_string(rr.groups_used) + "\t" + fixed(extract::mean_ndcg(model, groups, cfg.k)) +
              "\t" + fixed(extract::mean_ndcg(model, validation_groups, cfg.k)) + "\t" +
              hexfloat(choice.threshold) + "\t" + fixed(choice.precision) + "\t" +
              fixed(choice.recall) + "\n";
  }
  model.save(layout_.ranker_model());
  io::write_file(layout_.threshold(), hexfloat(choice.threshold) + "\n");
  io::write_file(layout_.reports_dir() / "extract.tsv", report);
  std::string note_text;
  for (const auto& n : notes) note_text += n + "\n";
  io::write_file(layout_.reports_dir() / "extract_warnings.txt", note_text);
  note("operating point: precision " + fixed(choice.precision) + ", recall " + fixed(choice.recall));
}

void Pipeline::extract() {
  const auto glossary = extract::read_glossary(require_input("glossary"));
  const extract::EsaIndex index(glossary.entries);
  const auto model = extract::RankerModel::load(require_file(layout_.ranker_model()));
  const double threshold = read_threshold(require_file(layout_.threshold()));
  const auto corpus = corpus::read_corpus(layout_.corpus_dir());
  std::vector<extract::Tag> tags;
  for (const auto& p : corpus.papers) {
    auto t = extract::tag(p.paper_id, paper_text(p), index, model, threshold, config_.extract_top_n);
    tags.insert(tags.end(), t.begin(), t.end());
  }
  io::write_file(layout_.tags(), extract::format_tag_lines(tags));
  note(std::to_string(tags.size()) + " mention_knowledge tags");
}

void Pipeline::relate_train() {
  const auto path = require_input("relation_annotations");
  const auto file = relate::read_relation_annotations(path);
  for (const auto& d : file.warnings) note(path.string() + ":" + std::to_string(d.line) + ": " + d.message);
  std::vector<relate::RelationAnnotation> train;
  std::vector<relate::RelationAnnotation> test;
  for (const auto& a : file.annotations) {
    (held_out(a.sentence + "\t" + a.head + "\t" + a.tail) ? test : train).push_back(a);
  }
  relate::RelationTrainConfig cfg;
  cfg.epochs = config_.relate_epochs;
  cfg.dim = config_.relate_dim;
  cfg.seed = mix_seed(config_.seed, kRelationSeed);
  relate::RelationTrainReport tr;
  const auto model = relate::train_relation(train, cfg, &tr);
  model.save(layout_.relation_model());

  std::string report = "train\t" + std::to_string(train.size()) + "\nheld_out\t" +
                       std::to_string(test.size()) + "\n";
  if (!test.empty()) {
    std::vector<relate::RelationLabel> pred;
    std::vector<relate::RelationLabel> gold;
    std::size_t correct = 0;
    for (const auto& a : test) {
      pred.push_back(relate::predict_relation(a.sentence, a.head, a.tail, model).label);
      gold.push_back(a.label);
      correct += pred.back() == gold.back();
    }
    const auto m = relate::evaluate_relations(pred, gold);
    report += "accuracy\t" + fixed(static_cast<double>(correct) / test.size()) + "\nprecision\t" +
              fixed(m.precision) + "\nrecall\t" + fixed(m.recall) + "\n";
  }
  io::write_file(layout_.reports_dir() / "relate.txt", report);
  note("trained on " + std::to_string(train.size()) + " annotations");
}

void Pipeline::relate() {
  const auto glossary = extract::read_glossary(require_input("glossary"));
  const auto triples_path = require_input("triples");
  const auto file = relate::read_triples(triples_path);
  const auto model = relate::RelationModel::load(require_file(layout_.relation_model()));
  const auto corpus = corpus::read_corpus(layout_.corpus_dir());
  const PaperRefs refs(corpus);
  const relate::NameMap names(glossary.entries);

  std::string warnings = format_diagnostics(triples_path, file.warnings);
  std::vector<relate::AlignedTriple> aligned;
  std::size_t unresolved = 0;
  std::size_t unaligned = 0;
  for (auto t : file.triples) {
    const auto id = refs.resolve(t.paper_id);
    if (!id) {
      ++unresolved;
      warnings += triples_path.string() + ": unknown paper " + t.paper_id + "\n";
      continue;
    }
    t.paper_id = *id;
    if (auto a = relate::align(t, names)) {
      aligned.push_back(std::move(*a));
    } else {
      ++unaligned;
    }
  }
  const auto edges = relate::classify_triples(aligned, model);
  std::vector<relate::RelationEdge> kept;
  std::vector<relate::RelationEdge> unknown;
  for (const auto& e : edges) (e.label == relate::RelationLabel::unknown ? unknown : kept).push_back(e);
  io::write_file(layout_.relations(), relate::format_edge_lines(kept));
  io::write_file(layout_.unknown_relations(), relate::format_edge_lines(unknown));
  io::write_file(layout_.reports_dir() / "relate_warnings.txt", warnings);
  note(std::to_string(file.triples.size()) + " triples, " + std::to_string(aligned.size()) +
       " aligned, " + std::to_string(unaligned) + " unaligned, " + std::to_string(unresolved) +
       " unresolved; " + std::to_string(kept.size()) + " edges, " + std::to_string(unknown.size()) +
       " unknown");
}

void Pipeline::build_kg() {
  const auto corpus = corpus::read_corpus(layout_.corpus_dir());
  const PaperRefs refs(corpus);
  const auto glossary = extract::read_glossary(require_input("glossary"));
  const auto disciplines = read_disciplines(require_file(layout_.disciplines()));
  const auto tags = extract::read_tag_lines(require_file(layout_.tags()));
  const auto relations = relate::parse_edge_lines(io::read_lines(require_file(layout_.relations())));
  const auto locations = corpus::read_locations(require_file(layout_.locations()));
  const auto org_locations = read_org_locations(require_file(layout_.org_locations()));

  kg::KnowledgeGraph g;
  std::vector<std::string> warnings;
  const auto node = [&](ConceptKind kind, const std::string& id, kg::Properties props = {}) {
    g.upsert_node({{kind, id}, std::move(props)});
    return kg::NodeKey{kind, id};
  };
  const auto edge = [&](const kg::NodeKey& s, RelationKind r, const kg::NodeKey& t,
                        std::optional<std::string> prov = std::nullopt) {
    g.upsert_edge({{s, r, t}, std::move(prov)});
  };

  for (const auto& a : corpus.authors) {
    node(ConceptKind::author, a.id, {{"name", a.display_name}});
  }
  for (const auto& o : corpus.orgs) node(ConceptKind::organization, o.id, {{"name", o.display_name}});
  std::map<std::string, ConceptKind> venue_kind;
  for (const auto& v : corpus.venues) {
    venue_kind[v.id] = venue_concept(v.kind);
    node(venue_kind[v.id], v.id, {{"name", v.display_name}});
  }
  const auto& dnames = classify::discipline_names();
  for (const auto& d : dnames) node(ConceptKind::discipline, std::string(d), {{"name", std::string(d)}});

  for (const auto& p : corpus.papers) {
    kg::Properties props{{"title", p.title},
                         {"abstract", p.abstract},
                         {"year", std::to_string(p.year)},
                         {"type", std::string(corpus::to_string(p.type))}};
    if (p.doi) props["doi"] = *p.doi;
    std::set<std::string> sources;
    for (const auto& prov : p.provenance) sources.insert(std::string(corpus::to_string(prov.source)));
    props["source"] = text::join({sources.begin(), sources.end()}, ",");
    const auto pk = node(ConceptKind::paper, p.paper_id, std::move(props));
    for (const auto& a : p.author_ids) edge(pk, RelationKind::is_written_by, {ConceptKind::author, a});
    if (p.venue_id) edge(pk, RelationKind::is_published_in, {venue_kind.at(*p.venue_id), *p.venue_id});
  }
  for (const auto& [author, org] : corpus.affiliations) {
    edge({ConceptKind::author, author}, RelationKind::work_in, {ConceptKind::organization, org});
  }

  for (const auto& [paper, labels] : disciplines) {
    if (!corpus.find_paper(paper)) {
      warnings.push_back("disciplines: unknown paper " + paper);
      continue;
    }
    for (auto l : labels) {
      edge(paper_key(paper), RelationKind::belongs_to, {ConceptKind::discipline, std::string(dnames[l])});
    }
  }

  for (const auto& e : glossary.entries) {
    node(ConceptKind::knowledge, e.entity_id,
         {{"name", e.name},
          {"description", e.description},
          {"source", std::string(extract::to_string(e.source))}});
    edge(knowledge_key(e.entity_id), RelationKind::belongs_to,
         {ConceptKind::discipline, std::string(dnames[e.discipline])});
  }
  for (const auto& t : tags) {
    if (!corpus.find_paper(t.paper_id) || !g.find_node(knowledge_key(t.entity_id))) {
      warnings.push_back("tags: dangling tag " + t.paper_id + " -> " + t.entity_id);
      continue;
    }
    edge(paper_key(t.paper_id), RelationKind::mention_knowledge, knowledge_key(t.entity_id), t.paper_id);
  }
  for (const auto& r : relations) {
    if (!g.find_node(knowledge_key(r.head)) || !g.find_node(knowledge_key(r.tail))) {
      warnings.push_back("relations: unknown entity in " + r.head + " -> " + r.tail);
      continue;
    }
    edge(knowledge_key(r.head), relation_kind(r.label), knowledge_key(r.tail), r.paper_id);
  }

  const auto location = [&](const std::string& name, GeoPoint pt) {
    return node(ConceptKind::location, name,
                {{"name", name},
                 {"lat", text::format_double(pt.lat)},
                 {"lon", text::format_double(pt.lon)},
                 {"geohash", geo::encode(pt, geo::kIndexPrecision)}});
  };
  for (const auto& m : locations) {
    if (!corpus.find_paper(m.paper_id)) {
      warnings.push_back("locations: unknown paper " + m.paper_id);
      continue;
    }
    const auto lk = location(m.canonical_name, {m.lat, m.lon});
    edge(paper_key(m.paper_id), RelationKind::mention_location, lk);
  }
  for (const auto& o : org_locations) {
    const auto lk = location(o.name, o.point);
    edge({ConceptKind::organization, o.org_id}, RelationKind::is_located_in, lk);
  }

  if (const auto path = config_.input("citations")) {
    for (const auto& [line, f] : tsv_rows(require_file(*path), 2)) {
      const auto citing = refs.resolve(f[0]);
      const auto cited = refs.resolve(f[1]);
      const std::string where = path->string() + ":" + std::to_string(line) + ": ";
      if (!citing || !cited) {
        warnings.push_back(where + "unknown paper " + (!citing ? f[0] : f[1]));
      } else if (*citing == *cited) {
        warnings.push_back(where + "self-citation ignored");
      } else {
        edge(paper_key(*cited), RelationKind::is_cited_by, paper_key(*citing));
      }
    }
  }
  if (const auto path = config_.input("topics")) {
    for (const auto& [line, f] : tsv_rows(require_file(*path), 2)) {
      const auto paper = refs.resolve(f[0]);
      if (!paper) {
        warnings.push_back(path->string() + ":" + std::to_string(line) + ": unknown paper " + f[0]);
        continue;
      }
      const auto tk = node(ConceptKind::topic, topic_id(f[1]), {{"name", std::string(text::trim(f[1]))}});
      edge(paper_key(*paper), RelationKind::in_the_topic_of, tk);
    }
  }
  if (const auto path = config_.input("same_as")) {
    // entity_id <TAB> external id <TAB> external label
    for (const auto& [line, f] : tsv_rows(require_file(*path), 3)) {
      if (!g.find_node(knowledge_key(f[0]))) {
        warnings.push_back(path->string() + ":" + std::to_string(line) + ": unknown entity " + f[0]);
        continue;
      }
      const auto ext = node(ConceptKind::knowledge, f[1], {{"name", f[2]}, {"source", "wiki"}});
      edge(knowledge_key(f[0]), RelationKind::sameAs, ext);
    }
  }
  if (const auto path = config_.input("subclass_of")) {
    // kind <TAB> child <TAB> parent, kind one of knowledge, topic, discipline
    for (const auto& [line, f] : tsv_rows(require_file(*path), 3)) {
      const std::string where = path->string() + ":" + std::to_string(line) + ": ";
      if (f[0] == "knowledge") {
        if (!g.find_node(knowledge_key(f[1])) || !g.find_node(knowledge_key(f[2]))) {
          warnings.push_back(where + "unknown entity");
          continue;
        }
        edge(knowledge_key(f[1]), RelationKind::subClassOf, knowledge_key(f[2]));
      } else if (f[0] == "topic") {
        const auto child = node(ConceptKind::topic, topic_id(f[1]), {{"name", f[1]}});
        const auto parent = node(ConceptKind::topic, topic_id(f[2]), {{"name", f[2]}});
        edge(child, RelationKind::subClassOf, parent);
      } else if (f[0] == "discipline") {
        const auto c = classify::parse_discipline(f[1]);
        const auto p = classify::parse_discipline(f[2]);
        if (!c || !p) {
          warnings.push_back(where + "unknown discipline");
          continue;
        }
        edge({ConceptKind::discipline, std::string(dnames[*c])}, RelationKind::subClassOf,
             {ConceptKind::discipline, std::string(dnames[*p])});
      } else {
        throw Error(where + "unknown kind '" + f[0] + "'");
      }
    }
  }

  if (const auto problems = g.check_integrity(); !problems.empty()) {
    throw Error("integrity check failed: " + problems.front());
  }
  kg::save_graph(g, layout_.graph_log());
  io::write_file(layout_.graph_stats(), kg::format_stats(g.stats()));
  std::string w;
  for (const auto& s : warnings) w += s + "\n";
  io::write_file(layout_.reports_dir() / "build_kg_warnings.txt", w);
  note(std::to_string(g.nodes().size()) + " nodes, " + std::to_string(g.edges().size()) +
       " edges, " + std::to_string(warnings.size()) + " warnings");
}

void Pipeline::geo_index() {
  const auto corpus = corpus::read_corpus(layout_.corpus_dir());
  const geo::GeoIndex index(corpus::read_locations(require_file(layout_.locations())), corpus);
  io::write_file(layout_.geo_dir() / "index.tsv", geo::format_index(index));
  for (std::size_t p = 1; p <= 6; ++p) {
    io::write_file(layout_.geo_dir() / ("density_p" + std::to_string(p) + ".tsv"),
                   geo::format_density(index.density_grid(p)));
  }
  note(std::to_string(index.size()) + " indexed points");
}

void Pipeline::netsci() {
  const auto g = kg::load_graph(require_file(layout_.graph_log()));
  netsci::PowerLawOptions options;
  options.replicates = config_.netsci_replicates;
  options.seed = mix_seed(config_.seed, kNetsciSeed);
  options.threads = config_.netsci_threads;

  std::vector<std::pair<netsci::NetworkKind, std::vector<netsci::DegreeStats>>> rows;
  std::string notes;
  for (auto kind : netsci::all_network_kinds()) {
    const auto net = netsci::build_network(g, kind);
    auto stats = netsci::degree_stats(net);
    std::vector<std::string> fit_notes;
    netsci::attach_fits(stats, net, options, &fit_notes);
    const std::string name(netsci::to_string(kind));
    for (const auto& n : fit_notes) notes += name + ": " + n + "\n";
    for (const auto& n : net.log) notes += name + ": " + n + "\n";
    io::write_file(layout_.netsci_dir() / (name + ".json"),
                   network_stats_json(net, stats).dump(2) + "\n");
    io::write_file(layout_.netsci_dir() / (name + "_degrees.tsv"), netsci::export_distribution(net));
    io::write_file(layout_.netsci_dir() / (name + "_edges.tsv"), netsci::format_edge_list(net));
    rows.emplace_back(kind, std::move(stats));
  }
  io::write_file(layout_.netsci_dir() / "report.txt", netsci::format_report(rows));
  io::write_file(layout_.netsci_dir() / "notes.txt", notes);
  note("4 networks analysed");
}

namespace {

// Files a snapshot carries, relative to the data directory.
std::vector<fs::path> snapshot_files() {
  std::vector<fs::path> files{"corpus/papers.jsonl",   "corpus/authors.jsonl",
                              "corpus/orgs.jsonl",     "corpus/venues.jsonl",
                              "corpus/affiliations.tsv", "corpus/conflicts.txt",
                              "corpus/locations.tsv",  "classify/disciplines.tsv",
                              "extract/tags.tsv",      "kg/graph.log",
                              "kg/stats.txt"};
  for (auto kind : netsci::all_network_kinds()) {
    files.push_back(fs::path("netsci") / (std::string(netsci::to_string(kind)) + ".json"));
  }
  return files;
}

}  // namespace

void Pipeline::export_kg() {
  const auto g = kg::load_graph(require_file(layout_.graph_log()));
  const fs::path nt = config_.export_path.empty() ? layout_.ntriples() : config_.export_path;
  kg::write_ntriples(g, nt);
  note(std::to_string(g.nodes().size() + g.edges().size()) + " triples written to " + nt.string());

  // Publish an immutable snapshot named by the hash of its contents, then
  // repoint `current` with an atomic rename.
  std::string manifest = "skg-snapshot " + std::to_string(kApiVersion) + "\n";
  std::vector<std::pair<fs::path, std::string>> contents;
  for (const auto& rel : snapshot_files()) {
    std::string data = io::read_file(require_file(layout_.root / rel));
    manifest += rel.generic_string() + "\t" + content_hash128(data) + "\n";
    contents.emplace_back(rel, std::move(data));
  }
  const std::string id = content_hash128(manifest).substr(0, 16);
  const fs::path dir = layout_.snapshots_dir() / id;
  if (!fs::exists(dir)) {
    const fs::path tmp = layout_.snapshots_dir() / (".tmp-" + id);
    fs::remove_all(tmp);
    for (const auto& [rel, data] : contents) io::write_file(tmp / rel, data);
    io::write_file(tmp / "manifest.txt", manifest);
    fs::rename(tmp, dir);
  }
  const fs::path link_tmp = layout_.root / ".current.tmp";
  fs::remove(link_tmp);
  fs::create_directory_symlink(fs::path("snapshots") / id, link_tmp);
  fs::rename(link_tmp, layout_.current_snapshot());
  note("snapshot " + id + " published");
}

}  // namespace skg::service
