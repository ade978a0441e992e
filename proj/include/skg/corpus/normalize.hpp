#pragma once

#include <string>
#include <string_view>

namespace skg::corpus {

/// Canonical key for a person, organisation, venue or title: case-folded,
/// diacritics removed, punctuation deleted, whitespace collapsed.
/// Idempotent. Throws skg::Error for empty input or when nothing survives.
std::string normalize_name(std::string_view raw);

/// Lowercased DOI with resolver prefixes ("https://doi.org/", "doi:") removed.
std::string normalize_doi(std::string_view raw);

}  // namespace skg::corpus
