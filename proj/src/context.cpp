// SPDX-License-Identifier: Apache-2.0
#include "vultriad/context.hpp"

#include "vultriad/errors.hpp"
#include "vultriad/strings.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>

namespace vultriad::context {

using nlohmann::json;

const ContextEntry* ContextStore::find(const std::string& name) const {
    auto it = entries.find(name);
    return it == entries.end() ? nullptr : &it->second;
}

const ContextStore* ContextSet::resolve(const std::string& context_ref) const {
    auto it = stores.find(context_ref);
    return it == stores.end() ? nullptr : &it->second;
}

bool ContextSet::resolves_function(const std::string& context_ref,
                                   const std::string& function_name) const {
    const ContextStore* store = resolve(context_ref);
    return store != nullptr && store->has(function_name);
}

namespace {

const ContextEntry& require_entry(const ContextStore& store, const std::string& name) {
    const ContextEntry* entry = store.find(name);
    if (!entry) throw UnknownFunctionError(name);
    return *entry;
}

std::vector<std::string> sorted_unique(std::vector<std::string> names) {
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    return names;
}

} // namespace

std::string get_function_body(const ContextStore& store, const std::string& name,
                              std::size_t budget_tokens) {
    const ContextEntry& entry = require_entry(store, name);
    const std::size_t budget_chars = budget_tokens * kCharsPerToken;
    if (entry.body.size() <= budget_chars) return entry.body;

    auto lines = strings::split_lines(entry.body);
    std::string prefix;
    std::size_t kept = 0;
    for (const auto& line : lines) {
        const std::size_t added = line.size() + (kept ? 1 : 0);
        if (prefix.size() + added > budget_chars) break;
        if (kept) prefix += '\n';
        prefix += line;
        ++kept;
    }
    const std::size_t dropped = lines.size() - kept;
    if (kept) prefix += '\n';
    prefix += "...[truncated " + std::to_string(dropped) + " lines]";
    return prefix;
}

std::vector<std::string> get_callers(const ContextStore& store, const std::string& name) {
    return require_entry(store, name).callers;
}

std::vector<std::string> get_callees(const ContextStore& store, const std::string& name) {
    return require_entry(store, name).callees;
}

ContextStore load_context(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open context file: " + path);

    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw SchemaError("invalid JSON in " + path + ": " + e.what());
    }

    if (!doc.is_object() || !doc.contains("project_id") || !doc.contains("functions"))
        throw SchemaError("context file must be {project_id, functions}: " + path);

    ContextStore store;
    store.project_id = doc.at("project_id").get<std::string>();
    for (const auto& [name, fn] : doc.at("functions").items()) {
        ContextEntry entry;
        entry.function_name = name;
        entry.body = fn.value("body", std::string{});
        if (entry.body.empty())
            throw SchemaError("empty body for function '" + name + "' in " + path);
        entry.callers = sorted_unique(fn.value("callers", std::vector<std::string>{}));
        entry.callees = sorted_unique(fn.value("callees", std::vector<std::string>{}));
        store.entries.emplace(name, std::move(entry));
    }
    return store;
}

ContextSet load_context_set(const std::string& path) {
    namespace fs = std::filesystem;
    ContextSet set;
    if (fs::is_directory(path)) {
        std::vector<fs::path> files;
        for (const auto& de : fs::directory_iterator(path))
            if (de.path().extension() == ".json") files.push_back(de.path());
        std::sort(files.begin(), files.end());
        for (const auto& file : files) {
            ContextStore store = load_context(file.string());
            set.stores.emplace(store.project_id, std::move(store));
        }
    } else {
        ContextStore store = load_context(path);
        set.stores.emplace(store.project_id, std::move(store));
    }
    return set;
}

} // namespace vultriad::context
