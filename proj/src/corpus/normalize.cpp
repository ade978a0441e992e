#include "skg/corpus/normalize.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <cstdint>

#include "skg/common/error.hpp"
#include "skg/common/text.hpp"

namespace skg::corpus {

std::string normalize_name(std::string_view raw) {
  if (text::trim(raw).empty()) throw Error("normalize_name: empty input");
  const std::string folded = text::fold(raw);

  std::string out;
  bool pending_space = false;
  const auto* bytes = reinterpret_cast<const uint8_t*>(folded.data());
  const auto n = static_cast<int32_t>(folded.size());
  int32_t i = 0;
  while (i < n) {
    const int32_t start = i;
    UChar32 c = 0;
    U8_NEXT(bytes, i, n, c);
    if (c < 0) continue;
    if (u_isUWhiteSpace(c)) {
      pending_space = !out.empty();
    } else if (u_isalnum(c)) {
      if (pending_space) out.push_back(' ');
      pending_space = false;
      out.append(folded, static_cast<std::size_t>(start),
                 static_cast<std::size_t>(i - start));
    }
    // punctuation and symbols are dropped without introducing a break
  }
  if (out.empty()) {
    throw Error("normalize_name: no letters or digits in '" + std::string(raw) + "'");
  }
  return out;
}

std::string normalize_doi(std::string_view raw) {
  std::string doi = text::fold(text::trim(raw));
  for (std::string_view prefix :
       {"https://doi.org/", "http://doi.org/", "https://dx.doi.org/",
        "http://dx.doi.org/", "doi:"}) {
    if (doi.starts_with(prefix)) {
      doi.erase(0, prefix.size());
      break;
    }
  }
  return std::string(text::trim(doi));
}

}  // namespace skg::corpus
