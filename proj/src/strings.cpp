// SPDX-License-Identifier: Apache-2.0
#include "vultriad/strings.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>

namespace vultriad::strings {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_lines(std::string_view text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t nl = text.find('\n', start);
        if (nl == std::string_view::npos) {
            out.emplace_back(text.substr(start));
            break;
        }
        out.emplace_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    // A trailing newline does not open a new line.
    if (!out.empty() && out.back().empty() && !text.empty() && text.back() == '\n')
        out.pop_back();
    return out;
}

std::size_t count_lines(std::string_view text) {
    if (text.empty()) return 0;
    return split_lines(text).size();
}

std::string normalize_source(std::string_view source) {
    std::string joined;
    auto lines = split_lines(source);
    for (auto& line : lines) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        while (!line.empty() && (line.back() == ' ' || line.back() == '\t')) line.pop_back();
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (i) joined += '\n';
        joined += lines[i];
    }
    return joined;
}

std::string unquote(std::string_view s) {
    std::string t = trim(s);
    if (t.size() >= 2 && ((t.front() == '"' && t.back() == '"') || (t.front() == '\'' && t.back() == '\'')))
        t = t.substr(1, t.size() - 2);
    return trim(t);
}

bool contains(std::string_view haystack, std::string_view needle) {
    return haystack.find(needle) != std::string_view::npos;
}

std::string one_decimal(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.1f", v);
    return buf;
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string pad_right(std::string_view s, std::size_t width) {
    std::string out(s);
    if (out.size() < width) out.append(width - out.size(), ' ');
    return out;
}

std::string pad_left(std::string_view s, std::size_t width) {
    std::string out(s);
    if (out.size() < width) out.insert(0, width - out.size(), ' ');
    return out;
}

} // namespace vultriad::strings
