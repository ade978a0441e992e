#pragma once

#include <compare>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace skg::corpus {

enum class SourceId { acemap, cord19, digsci, preprint };
enum class PaperType { article, proceeding, preprint };
enum class VenueKind { journal, conference, preprint };

std::string_view to_string(SourceId s);
std::string_view to_string(PaperType t);
std::string_view to_string(VenueKind k);
std::optional<SourceId> parse_source_id(std::string_view s);
std::optional<PaperType> parse_paper_type(std::string_view s);
std::optional<VenueKind> parse_venue_kind(std::string_view s);

/// One row of one source feed, as read from the ingestion format.
struct SourceRecord {
  SourceId source = SourceId::acemap;
  std::string external_id;
  std::optional<std::string> doi;
  std::string title;
  std::string abstract;
  int year = 0;
  std::vector<std::string> authors;
  std::vector<std::string> org_strings;
  std::string venue_string;
  PaperType type = PaperType::article;
};

struct Provenance {
  SourceId source = SourceId::acemap;
  std::string external_id;

  auto operator<=>(const Provenance&) const = default;
};

/// A deduplicated paper. `paper_id` is the content hash of the dedup key.
struct PaperRecord {
  std::string paper_id;
  std::optional<std::string> doi;
  std::string title;
  std::string abstract;
  int year = 0;
  PaperType type = PaperType::article;
  std::vector<std::string> author_ids;
  std::vector<std::string> org_ids;
  std::optional<std::string> venue_id;
  std::set<Provenance> provenance;
};

struct CanonicalEntity {
  std::string id;
  std::string display_name;
  std::string normalized_key;
  std::set<std::string> aliases;
};

using CanonicalAuthor = CanonicalEntity;
using CanonicalOrg = CanonicalEntity;

struct CanonicalVenue : CanonicalEntity {
  VenueKind kind = VenueKind::journal;
};

struct LocationMention {
  std::string paper_id;
  std::string surface;
  std::string canonical_name;
  double lat = 0.0;
  double lon = 0.0;
};

/// Output of fusion. Every vector is sorted by id.
struct FusedCorpus {
  std::vector<PaperRecord> papers;
  std::vector<CanonicalAuthor> authors;
  std::vector<CanonicalOrg> orgs;
  std::vector<CanonicalVenue> venues;
  /// (author_id, org_id) pairs observed on at least one source record.
  std::set<std::pair<std::string, std::string>> affiliations;
  std::vector<std::string> conflicts;

  const PaperRecord* find_paper(std::string_view paper_id) const;
};

/// Reads and writes the fused corpus directory: papers.jsonl, authors.tsv,
/// orgs.tsv, venues.tsv, affiliations.tsv, conflicts.txt.
void write_corpus(const std::filesystem::path& dir, const FusedCorpus& corpus);
FusedCorpus read_corpus(const std::filesystem::path& dir);

void write_locations(const std::filesystem::path& path,
                     const std::vector<LocationMention>& mentions);
std::vector<LocationMention> read_locations(const std::filesystem::path& path);

}  // namespace skg::corpus
