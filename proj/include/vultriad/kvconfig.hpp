// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>

namespace vultriad::kvconfig {

/// Flat `key = value` config file: one pair per line, # comments, values
/// either bare or quoted. Booleans are true/false. Secrets stay in the
/// environment, never in these files.
class KvConfig {
public:
    static KvConfig from_file(const std::string& path);
    static KvConfig from_text(const std::string& text);

    std::optional<std::string> get(const std::string& key) const;
    std::string get_or(const std::string& key, const std::string& fallback) const;
    long long get_int_or(const std::string& key, long long fallback) const;
    double get_double_or(const std::string& key, double fallback) const;
    bool get_bool_or(const std::string& key, bool fallback) const;

    const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

} // namespace vultriad::kvconfig
