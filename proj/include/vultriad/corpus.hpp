// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "vultriad/context.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace vultriad::corpus {

enum class VersionTag { pre_patch, post_patch };
enum class BinaryLabel { vulnerable, non_vulnerable };

std::string to_string(VersionTag tag);
std::string to_string(BinaryLabel label);
BinaryLabel binary_label_from_string(const std::string& s);

/// One version of the target function (the unit the analyst sees).
struct FunctionRecord {
    std::string function_name;
    std::string source_code;  // C/C++ function body, non-empty
    std::size_t line_count = 0;
    std::string project_id;
    VersionTag version_tag = VersionTag::pre_patch;
};

/// Metadata visible only to the evaluation judge; shared verbatim between
/// the two members of a pair.
struct GroundTruth {
    BinaryLabel binary_label = BinaryLabel::vulnerable;  // label of the pre-patch side
    std::vector<std::string> cwe_ids;                    // non-empty when vulnerable
    std::string cve_description;
    std::string patch_diff;      // unified diff, pre -> post
    std::string commit_message;
};

struct PairRecord {
    std::string pair_id;
    FunctionRecord pre;
    FunctionRecord post;
    GroundTruth ground_truth;
    std::string context_ref;
};

struct StatTriple {
    double min = 0;
    double avg = 0;
    double max = 0;
};

struct CorpusStats {
    std::size_t project_count = 0;
    std::size_t pair_count = 0;
    StatTriple lines;          // over pre-patch functions
    StatTriple context_lines;  // one-hop caller+callee body lines
    StatTriple callee_count;   // direct out-degree
    StatTriple caller_count;   // direct in-degree
};

enum class DropReason { duplicate, missing_context };
std::string to_string(DropReason reason);

struct CleanResult {
    std::vector<PairRecord> kept;
    std::vector<std::pair<std::string, DropReason>> dropped;  // (pair_id, reason)
};

/// Throws InvariantError when a record violates the pair invariants
/// (mismatched names, empty source, wrong version tags, vulnerable with no
/// CWE list, ...).
void validate_pair(const PairRecord& pair);

/// Loads a JSON-lines corpus; one pair object per line. Strict mode rejects
/// unknown keys; otherwise they are collected into `warnings`.
std::vector<PairRecord> load_corpus(const std::string& path, bool strict = false,
                                    std::vector<std::string>* warnings = nullptr);

/// Writes pairs back out as JSON-lines (canonical key order, one per line).
void save_corpus(const std::vector<PairRecord>& pairs, const std::string& path);

nlohmann::json pair_to_json(const PairRecord& pair);
PairRecord pair_from_json(const nlohmann::json& j, bool strict = false,
                          std::vector<std::string>* warnings = nullptr);

/// Drops exact duplicates — keyed on (project_id, function_name, hash of
/// the normalized pre-patch source) — and pairs whose target function does
/// not resolve in the context set. Total: never throws.
CleanResult clean_corpus(const std::vector<PairRecord>& pairs, const context::ContextSet& ctx);

/// Uniform sample without replacement, deterministic for a given seed and
/// stable across platforms. The selection preserves corpus order.
std::vector<PairRecord> sample_corpus(const std::vector<PairRecord>& pairs, std::size_t n,
                                      std::uint64_t seed);

/// Aggregates the dataset-statistics block. Throws MissingContextError when
/// a pair's target function does not resolve.
CorpusStats compute_stats(const std::vector<PairRecord>& pairs, const context::ContextSet& ctx);

} // namespace vultriad::corpus
