#include "skg/corpus/fuse.hpp"

#include <algorithm>
#include <map>

#include "skg/common/error.hpp"
#include "skg/common/hash.hpp"
#include "skg/common/text.hpp"
#include "skg/corpus/ingest.hpp"
#include "skg/corpus/normalize.hpp"

namespace skg::corpus {
namespace {

VenueKind venue_kind_for(const SourceRecord& r) {
  if (r.source == SourceId::preprint || r.type == PaperType::preprint) {
    return VenueKind::preprint;
  }
  return r.type == PaperType::proceeding ? VenueKind::conference : VenueKind::journal;
}

template <typename Entity>
class EntityTable {
 public:
  explicit EntityTable(std::string prefix) : prefix_(std::move(prefix)) {}

  // Returns the id, creating the entity on first sight of its key.
  Entity& intern(const std::string& raw, bool* created = nullptr) {
    const std::string key = normalize_name(raw);
    auto [it, inserted] = by_key_.try_emplace(key);
    Entity& e = it->second;
    if (inserted) {
      e.id = content_hash128(prefix_ + key);
      e.display_name = std::string(text::trim(raw));
      e.normalized_key = key;
    }
    e.aliases.insert(std::string(text::trim(raw)));
    if (created) *created = inserted;
    return e;
  }

  std::vector<Entity> sorted() const {
    std::vector<Entity> out;
    out.reserve(by_key_.size());
    for (const auto& [key, e] : by_key_) out.push_back(e);
    std::sort(out.begin(), out.end(),
              [](const Entity& a, const Entity& b) { return a.id < b.id; });
    return out;
  }

 private:
  std::string prefix_;
  std::map<std::string, Entity> by_key_;
};

int modal_year(const std::vector<const SourceRecord*>& group) {
  std::map<int, int> counts;
  for (const auto* r : group) ++counts[r->year];
  int best = counts.begin()->first;
  int best_count = 0;
  for (const auto& [year, count] : counts) {  // ascending: earliest wins ties
    if (count > best_count) {
      best = year;
      best_count = count;
    }
  }
  return best;
}

void push_unique(std::vector<std::string>& v, const std::string& id) {
  if (std::find(v.begin(), v.end(), id) == v.end()) v.push_back(id);
}

}  // namespace

std::string dedup_key(const SourceRecord& r) {
  if (r.doi && !r.doi->empty()) return "doi:" + normalize_doi(*r.doi);
  return "title:" + normalize_name(r.title) + "|" + std::to_string(r.year);
}

FusedCorpus fuse(const std::vector<std::vector<SourceRecord>>& sources) {
  std::map<std::string, std::vector<const SourceRecord*>> groups;
  for (const auto& feed : sources) {
    for (const auto& r : feed) {
      validate(r);
      groups[dedup_key(r)].push_back(&r);
    }
  }

  FusedCorpus out;
  EntityTable<CanonicalAuthor> authors("author|");
  EntityTable<CanonicalOrg> orgs("org|");
  EntityTable<CanonicalVenue> venues("venue|");

  for (auto& [key, group] : groups) {
    std::sort(group.begin(), group.end(), [](const SourceRecord* a, const SourceRecord* b) {
      return std::tie(a->source, a->external_id) < std::tie(b->source, b->external_id);
    });
    // The record with the longest abstract supplies the descriptive fields.
    const SourceRecord* primary = group.front();
    for (const auto* r : group) {
      if (r->abstract.size() > primary->abstract.size()) primary = r;
    }

    PaperRecord paper;
    paper.paper_id = content_hash128(key);
    paper.doi = primary->doi;
    paper.title = primary->title;
    paper.abstract = primary->abstract;
    paper.type = primary->type;
    paper.year = modal_year(group);
    for (const auto* r : group) {
      if (r->year != paper.year) {
        out.conflicts.push_back("year conflict for " + key + ": " +
                                std::string(to_string(r->source)) + ":" + r->external_id +
                                " says " + std::to_string(r->year) + ", kept " +
                                std::to_string(paper.year));
      }
    }

    std::vector<const SourceRecord*> ordered{primary};
    for (const auto* r : group) {
      if (r != primary) ordered.push_back(r);
    }
    for (const auto* r : ordered) {
      paper.provenance.insert({r->source, r->external_id});
      std::vector<std::string> rec_authors;
      std::vector<std::string> rec_orgs;
      for (const auto& name : r->authors) {
        rec_authors.push_back(authors.intern(name).id);
        push_unique(paper.author_ids, rec_authors.back());
      }
      for (const auto& org : r->org_strings) {
        rec_orgs.push_back(orgs.intern(org).id);
        push_unique(paper.org_ids, rec_orgs.back());
      }
      // Aligned lists pair up positionally; otherwise every author is
      // credited to every listed organisation.
      if (rec_authors.size() == rec_orgs.size()) {
        for (std::size_t i = 0; i < rec_authors.size(); ++i) {
          out.affiliations.emplace(rec_authors[i], rec_orgs[i]);
        }
      } else {
        for (const auto& a : rec_authors) {
          for (const auto& o : rec_orgs) out.affiliations.emplace(a, o);
        }
      }
      if (!paper.venue_id && !text::trim(r->venue_string).empty()) {
        bool created = false;
        auto& venue = venues.intern(r->venue_string, &created);
        if (created) venue.kind = venue_kind_for(*r);
        paper.venue_id = venue.id;
      }
    }
    out.papers.push_back(std::move(paper));
  }

  std::sort(out.papers.begin(), out.papers.end(),
            [](const PaperRecord& a, const PaperRecord& b) { return a.paper_id < b.paper_id; });
  out.authors = authors.sorted();
  out.orgs = orgs.sorted();
  out.venues = venues.sorted();
  return out;
}

std::vector<SourceRecord> to_source_records(const FusedCorpus& corpus) {
  std::map<std::string, const CanonicalEntity*> by_id;
  for (const auto& a : corpus.authors) by_id[a.id] = &a;
  for (const auto& o : corpus.orgs) by_id[o.id] = &o;
  for (const auto& v : corpus.venues) by_id[v.id] = &v;

  std::vector<SourceRecord> out;
  for (const auto& p : corpus.papers) {
    for (const auto& prov : p.provenance) {
      SourceRecord r;
      r.source = prov.source;
      r.external_id = prov.external_id;
      r.doi = p.doi;
      r.title = p.title;
      r.abstract = p.abstract;
      r.year = p.year;
      r.type = p.type;
      for (const auto& id : p.author_ids) r.authors.push_back(by_id.at(id)->display_name);
      for (const auto& id : p.org_ids) r.org_strings.push_back(by_id.at(id)->display_name);
      if (p.venue_id) r.venue_string = by_id.at(*p.venue_id)->display_name;
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace skg::corpus
