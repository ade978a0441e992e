#pragma once

#include <string>
#include <vector>

#include "skg/corpus/records.hpp"

namespace skg::corpus {

/// The key two records must share to be merged: "doi:<doi>" when a DOI is
/// present, otherwise "title:<normalized title>|<year>".
std::string dedup_key(const SourceRecord& record);

/// Merges the source feeds into one corpus. Records sharing a dedup key
/// become one PaperRecord carrying the union of their provenance. When
/// records under one DOI disagree on the year the modal year wins (ties go
/// to the earliest) and the disagreement is logged in `conflicts`.
FusedCorpus fuse(const std::vector<std::vector<SourceRecord>>& sources);

/// One SourceRecord per provenance entry, carrying the fused fields; feeding
/// the result back into fuse() reproduces the same entities.
std::vector<SourceRecord> to_source_records(const FusedCorpus& corpus);

}  // namespace skg::corpus
