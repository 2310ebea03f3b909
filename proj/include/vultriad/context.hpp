// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace vultriad::context {

/// One function's cross-procedural neighborhood. Caller/callee lists are
/// kept sorted and duplicate-free; a listed name need not have its own
/// entry (referential closure is not required by the data).
struct ContextEntry {
    std::string function_name;
    std::string body;
    std::vector<std::string> callers;
    std::vector<std::string> callees;
};

/// Per-project map backing the three analyst tools. Immutable after load.
struct ContextStore {
    std::string project_id;
    std::map<std::string, ContextEntry> entries;

    bool has(const std::string& name) const { return entries.count(name) != 0; }
    const ContextEntry* find(const std::string& name) const;
};

/// A collection of per-project stores keyed by context_ref. Pipelines index
/// into this because a corpus spans several projects.
struct ContextSet {
    std::map<std::string, ContextStore> stores;

    const ContextStore* resolve(const std::string& context_ref) const;
    bool resolves_function(const std::string& context_ref, const std::string& function_name) const;
};

inline constexpr std::size_t kCharsPerToken = 4;  // deterministic token estimate

/// Stored body, truncated to a whole-line prefix within `budget_tokens`
/// (4 chars ~= 1 token) with an explicit marker naming the dropped line
/// count. Throws UnknownFunctionError for absent names.
std::string get_function_body(const ContextStore& store, const std::string& name,
                              std::size_t budget_tokens);

/// Direct callers, lexicographic order. Throws UnknownFunctionError.
std::vector<std::string> get_callers(const ContextStore& store, const std::string& name);

/// Direct callees, lexicographic order. Throws UnknownFunctionError.
std::vector<std::string> get_callees(const ContextStore& store, const std::string& name);

/// Loads one per-project store from a JSON file
/// {project_id, functions: {name: {body, callers, callees}}}.
ContextStore load_context(const std::string& path);

/// Loads a directory of *.json stores (or a single file) into a set, keyed
/// by each store's project_id.
ContextSet load_context_set(const std::string& path);

} // namespace vultriad::context
