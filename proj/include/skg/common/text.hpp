#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace skg::text {

/// A word token: folded text plus the byte range it came from.
struct Token {
  std::string text;
  std::size_t begin = 0;
  std::size_t end = 0;
};

/// Splits on anything that is not a letter, digit or combining mark. Token
/// text is case-folded and stripped of diacritics; offsets index `input`.
std::vector<Token> tokenize(std::string_view input);

/// Convenience: the folded token strings only.
std::vector<std::string> words(std::string_view input);

/// Full Unicode case fold plus diacritic removal, keeping every other
/// character (punctuation included).
std::string fold(std::string_view input);

/// Lowercase, diacritic-fold and collapse runs of whitespace to one space,
/// trimming both ends. Punctuation is preserved.
std::string fold_collapse(std::string_view input);

/// Case-insensitive (folded) substring test.
bool contains_folded(std::string_view haystack, std::string_view folded_needle);

std::string_view trim(std::string_view s);

/// Number of Unicode letters (general category L*) in a UTF-8 string.
std::size_t count_letters(std::string_view s);

/// Whitespace-separated fields (any run of Unicode white space).
std::vector<std::string> split_whitespace(std::string_view s);

/// Splits a single line on a delimiter; empty fields are kept.
std::vector<std::string> split(std::string_view s, char delim);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

/// Backslash escaping for tab-separated fields: \t \n \r and \\ .
std::string escape_field(std::string_view s);
std::string unescape_field(std::string_view s);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

/// Strict full-string parses; throw skg::Error on junk or overflow.
double parse_double(std::string_view s);
long long parse_int(std::string_view s);

/// true if every byte is well-formed UTF-8.
bool is_valid_utf8(std::string_view s);

}  // namespace skg::text
