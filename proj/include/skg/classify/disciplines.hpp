#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace skg::classify {

inline constexpr std::size_t kDisciplineCount = 22;

/// The 22 discipline labels; a label's index is its position here.
const std::array<std::string_view, kDisciplineCount>& discipline_names();

/// Accepts an index ("7") or a name (case-insensitive).
std::optional<std::size_t> parse_discipline(std::string_view name_or_index);

}  // namespace skg::classify
