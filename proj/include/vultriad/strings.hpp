// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace vultriad::strings {

std::string trim(std::string_view s);
std::vector<std::string> split_lines(std::string_view text);

/// Number of newline-delimited lines; "a\nb" -> 2, "a\nb\n" -> 2, "" -> 0.
std::size_t count_lines(std::string_view text);

/// Normalizes for content hashing: CRLF -> LF, trailing whitespace stripped
/// per line, trailing blank lines dropped.
std::string normalize_source(std::string_view source);

/// Strips one layer of matching single or double quotes, then trims.
std::string unquote(std::string_view s);

bool contains(std::string_view haystack, std::string_view needle);

/// Fixed-point decimal with one fractional digit, e.g. 17.5 -> "17.5".
std::string one_decimal(double v);

std::string to_lower(std::string_view s);

/// Pads `s` with spaces on the right to at least `width` columns.
std::string pad_right(std::string_view s, std::size_t width);
std::string pad_left(std::string_view s, std::size_t width);

} // namespace vultriad::strings
