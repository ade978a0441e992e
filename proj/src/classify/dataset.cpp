#include "skg/classify/dataset.hpp"

#include <algorithm>

#include "skg/classify/disciplines.hpp"
#include "skg/common/io.hpp"
#include "skg/common/text.hpp"

namespace skg::classify {

TrainingSet parse_training_lines(const std::vector<std::string>& lines) {
  TrainingSet set;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (text::trim(lines[i]).empty()) continue;
    try {
      const auto f = text::split(lines[i], '\t');
      if (f.size() != 4) throw Error("expected 4 tab-separated fields");
      TrainingRecord r;
      r.paper_id = std::string(text::trim(f[0]));
      if (r.paper_id.empty()) throw Error("empty paper_id");
      for (const auto& l : text::split(f[1], ',')) {
        const auto v = text::parse_int(l);
        if (v < 0 || v >= static_cast<long long>(kDisciplineCount)) {
          throw Error("label " + std::to_string(v) + " outside 0-21");
        }
        r.labels.push_back(static_cast<std::size_t>(v));
      }
      std::sort(r.labels.begin(), r.labels.end());
      r.labels.erase(std::unique(r.labels.begin(), r.labels.end()), r.labels.end());
      r.title = text::unescape_field(f[2]);
      r.abstract = text::unescape_field(f[3]);
      set.records.push_back(std::move(r));
    } catch (const Error& e) {
      set.warnings.push_back({i + 1, e.what()});
    }
  }
  return set;
}

TrainingSet read_training_set(const std::filesystem::path& path) {
  return parse_training_lines(io::read_lines(path));
}

std::string format_training_line(const TrainingRecord& r) {
  std::vector<std::string> labels;
  for (auto l : r.labels) labels.push_back(std::to_string(l));
  return r.paper_id + "\t" + text::join(labels, ",") + "\t" + text::escape_field(r.title) +
         "\t" + text::escape_field(r.abstract);
}

std::vector<LabeledDocument> to_documents(const std::vector<TrainingRecord>& records) {
  std::vector<LabeledDocument> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    out.push_back({r.paper_id, text::words(r.title + " " + r.abstract), r.labels});
  }
  return out;
}

}  // namespace skg::classify
