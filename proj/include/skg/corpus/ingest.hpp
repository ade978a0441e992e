#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "skg/common/error.hpp"
#include "skg/corpus/records.hpp"

namespace skg::corpus {

struct IngestResult {
  std::vector<SourceRecord> records;
  Diagnostics warnings;
};

/// Reads one source feed in the JSON-lines ingestion format. Malformed lines
/// are reported in `warnings` with their line number; an unreadable file
/// throws IoError.
IngestResult ingest_source(const std::filesystem::path& path, SourceId source);

IngestResult parse_source_lines(const std::vector<std::string>& lines, SourceId source);

/// Throws skg::Error describing the first violated invariant.
void validate(const SourceRecord& record);

std::string to_json_line(const SourceRecord& record);

/// "line N: message" per diagnostic.
std::string format_report(const Diagnostics& diagnostics);

}  // namespace skg::corpus
