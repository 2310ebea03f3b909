// SPDX-License-Identifier: Apache-2.0
#include "vultriad/kvconfig.hpp"

#include "vultriad/errors.hpp"
#include "vultriad/strings.hpp"

#include <fstream>

namespace vultriad::kvconfig {

KvConfig KvConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_text(text);
}

KvConfig KvConfig::from_text(const std::string& text) {
    KvConfig config;
    std::size_t line_no = 0;
    for (const auto& raw : strings::split_lines(text)) {
        ++line_no;
        std::string line = raw;
        // A # starts a comment unless it sits inside a quoted value.
        bool in_quote = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') in_quote = !in_quote;
            else if (line[i] == '#' && !in_quote) {
                line.erase(i);
                break;
            }
        }
        line = strings::trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw SchemaError("expected 'key = value'", line_no);
        const std::string key = strings::trim(line.substr(0, eq));
        std::string value = strings::trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);
        if (key.empty()) throw SchemaError("empty key", line_no);
        config.values_[key] = value;
    }
    return config;
}

std::optional<std::string> KvConfig::get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

std::string KvConfig::get_or(const std::string& key, const std::string& fallback) const {
    return get(key).value_or(fallback);
}

long long KvConfig::get_int_or(const std::string& key, long long fallback) const {
    auto v = get(key);
    if (!v) return fallback;
    try {
        return std::stoll(*v);
    } catch (...) {
        throw SchemaError("config value '" + key + "' is not an integer: " + *v);
    }
}

double KvConfig::get_double_or(const std::string& key, double fallback) const {
    auto v = get(key);
    if (!v) return fallback;
    try {
        return std::stod(*v);
    } catch (...) {
        throw SchemaError("config value '" + key + "' is not a number: " + *v);
    }
}

bool KvConfig::get_bool_or(const std::string& key, bool fallback) const {
    auto v = get(key);
    if (!v) return fallback;
    if (*v == "true") return true;
    if (*v == "false") return false;
    throw SchemaError("config value '" + key + "' is not a boolean: " + *v);
}

} // namespace vultriad::kvconfig
