#include "skg/corpus/gazetteer.hpp"

#include "skg/common/io.hpp"
#include "skg/common/text.hpp"

namespace skg::corpus {

Gazetteer::Gazetteer(std::vector<std::pair<std::string, GeoPoint>> entries) {
  for (auto& [name, point] : entries) add(std::move(name), point);
}

void Gazetteer::add(std::string name, GeoPoint point) {
  if (!point.valid()) throw Error("gazetteer: coordinates out of range for '" + name + "'");
  auto tokens = text::words(name);
  if (tokens.empty()) throw Error("gazetteer: name without words: '" + name + "'");
  const std::string key = text::join(tokens, " ");
  if (by_key_.count(key)) throw Error("gazetteer: duplicate name '" + name + "'");
  const std::size_t index = entries_.size();
  by_key_.emplace(key, index);
  by_first_token_[tokens.front()].push_back(index);
  entries_.push_back({std::move(name), point, std::move(tokens)});
}

Gazetteer Gazetteer::load(const std::filesystem::path& path, Diagnostics* warnings) {
  Gazetteer g;
  std::size_t line_no = 0;
  for (const auto& line : io::read_lines(path)) {
    ++line_no;
    if (text::trim(line).empty() || line.front() == '#') continue;
    try {
      const auto f = text::split(line, '\t');
      if (f.size() != 3) throw Error("expected name<TAB>lat<TAB>lon");
      g.add(std::string(text::trim(f[0])),
            {text::parse_double(f[1]), text::parse_double(f[2])});
    } catch (const Error& e) {
      if (!warnings) throw Error(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
      warnings->push_back({line_no, e.what()});
    }
  }
  return g;
}

std::optional<GeoPoint> Gazetteer::locate(std::string_view name) const {
  const auto it = by_key_.find(text::join(text::words(name), " "));
  if (it == by_key_.end()) return std::nullopt;
  return entries_[it->second].point;
}

const std::vector<std::size_t>* Gazetteer::starting_with(const std::string& token) const {
  const auto it = by_first_token_.find(token);
  return it == by_first_token_.end() ? nullptr : &it->second;
}

}  // namespace skg::corpus
