#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "skg/classify/train.hpp"
#include "skg/common/error.hpp"

namespace skg::classify {

/// One line of the training-set file:
///   paper_id <TAB> comma-separated label indices <TAB> title <TAB> abstract
struct TrainingRecord {
  std::string paper_id;
  std::vector<std::size_t> labels;
  std::string title;
  std::string abstract;
};

struct TrainingSet {
  std::vector<TrainingRecord> records;
  Diagnostics warnings;
};

TrainingSet read_training_set(const std::filesystem::path& path);
TrainingSet parse_training_lines(const std::vector<std::string>& lines);
std::string format_training_line(const TrainingRecord& record);

std::vector<LabeledDocument> to_documents(const std::vector<TrainingRecord>& records);

}  // namespace skg::classify
