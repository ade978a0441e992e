#pragma once

#include <string>
#include <string_view>

namespace skg {

/// 128-bit content hash rendered as 32 lowercase hex digits.
std::string content_hash128(std::string_view data);

}  // namespace skg
