#include "skg/classify/disciplines.hpp"

#include <string>

#include "skg/common/text.hpp"

namespace skg::classify {

const std::array<std::string_view, kDisciplineCount>& discipline_names() {
  static constexpr std::array<std::string_view, kDisciplineCount> kNames{
      "Mathematical Sciences",
      "Physical Sciences",
      "Chemical Sciences",
      "Earth Sciences",
      "Environmental Sciences",
      "Biological Sciences",
      "Agricultural and Veterinary Sciences",
      "Information and Computing Sciences",
      "Engineering",
      "Technology",
      "Medical and Health Sciences",
      "Built Environment and Design",
      "Education",
      "Economics",
      "Commerce, Management, Tourism and Services",
      "Studies in Human Society",
      "Psychology and Cognitive Sciences",
      "Law and Legal Studies",
      "Studies in Creative Arts and Writing",
      "Language, Communication and Culture",
      "History and Archaeology",
      "Philosophy and Religious Studies",
  };
  return kNames;
}

std::optional<std::size_t> parse_discipline(std::string_view s) {
  s = text::trim(s);
  if (!s.empty() && s.find_first_not_of("0123456789") == std::string_view::npos) {
    const auto v = static_cast<std::size_t>(text::parse_int(s));
    if (v < kDisciplineCount) return v;
    return std::nullopt;
  }
  const std::string key = text::fold_collapse(s);
  const auto& names = discipline_names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (text::fold_collapse(names[i]) == key) return i;
  }
  return std::nullopt;
}

}  // namespace skg::classify
