// SPDX-License-Identifier: Apache-2.0
#include "vultriad/corpus.hpp"

#include "vultriad/digest.hpp"
#include "vultriad/errors.hpp"
#include "vultriad/strings.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <unordered_set>

namespace vultriad::corpus {

using nlohmann::json;

std::string to_string(VersionTag tag) {
    return tag == VersionTag::pre_patch ? "pre_patch" : "post_patch";
}

std::string to_string(BinaryLabel label) {
    return label == BinaryLabel::vulnerable ? "vulnerable" : "non_vulnerable";
}

BinaryLabel binary_label_from_string(const std::string& s) {
    if (s == "vulnerable") return BinaryLabel::vulnerable;
    if (s == "non_vulnerable") return BinaryLabel::non_vulnerable;
    throw SchemaError("unknown binary label '" + s + "'");
}

std::string to_string(DropReason reason) {
    return reason == DropReason::duplicate ? "duplicate" : "missing_context";
}

void validate_pair(const PairRecord& pair) {
    if (pair.pair_id.empty()) throw InvariantError("pair_id is empty");
    if (pair.pre.version_tag != VersionTag::pre_patch ||
        pair.post.version_tag != VersionTag::post_patch)
        throw InvariantError("version tags out of order for pair '" + pair.pair_id + "'");
    if (pair.pre.function_name != pair.post.function_name)
        throw InvariantError("mismatched function names within pair '" + pair.pair_id + "': '" +
                             pair.pre.function_name + "' vs '" + pair.post.function_name + "'");
    for (const FunctionRecord* fn : {&pair.pre, &pair.post}) {
        if (fn->source_code.empty())
            throw InvariantError("empty source code in pair '" + pair.pair_id + "'");
        if (fn->line_count != strings::count_lines(fn->source_code))
            throw InvariantError("line_count does not match source in pair '" + pair.pair_id + "'");
    }
    if (pair.ground_truth.binary_label == BinaryLabel::vulnerable &&
        pair.ground_truth.cwe_ids.empty())
        throw InvariantError("vulnerable pair '" + pair.pair_id + "' has no CWE ids");
}

namespace {

const std::set<std::string> kPairKeys = {"pair_id",   "project_id",   "function_name",
                                         "pre_code",  "post_code",    "ground_truth",
                                         "context_ref"};
const std::set<std::string> kTruthKeys = {"binary_label_pre", "cwe_ids", "cve_description",
                                          "patch_diff", "commit_message"};

void check_keys(const json& obj, const std::set<std::string>& known, const std::string& where,
                bool strict, std::vector<std::string>* warnings) {
    for (const auto& [key, _] : obj.items()) {
        if (known.count(key)) continue;
        if (strict) throw SchemaError("unknown key '" + key + "' in " + where);
        if (warnings) warnings->push_back("ignoring unknown key '" + key + "' in " + where);
    }
}

const json& require_field(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw SchemaError(std::string("missing field '") + key + "' in " + where);
    return *it;
}

FunctionRecord make_function(const std::string& name, const std::string& code,
                             const std::string& project, VersionTag tag) {
    FunctionRecord fn;
    fn.function_name = name;
    fn.source_code = code;
    fn.line_count = strings::count_lines(code);
    fn.project_id = project;
    fn.version_tag = tag;
    return fn;
}

// Rejection sampling keeps the draw unbiased and identical on every
// platform (mt19937_64 output is fully specified; uniform_int_distribution
// is not).
std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - max % n;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

void fold(StatTriple& t, double v, bool first) {
    if (first) {
        t.min = t.max = v;
    } else {
        t.min = std::min(t.min, v);
        t.max = std::max(t.max, v);
    }
    t.avg += v;  // running sum until finalize
}

} // namespace

PairRecord pair_from_json(const json& j, bool strict, std::vector<std::string>* warnings) {
    if (!j.is_object()) throw SchemaError("pair record is not a JSON object");
    const std::string where = "pair '" + j.value("pair_id", std::string("?")) + "'";
    check_keys(j, kPairKeys, where, strict, warnings);

    PairRecord pair;
    pair.pair_id = require_field(j, "pair_id", where).get<std::string>();
    const auto project = require_field(j, "project_id", where).get<std::string>();
    const auto name = require_field(j, "function_name", where).get<std::string>();
    pair.pre = make_function(name, require_field(j, "pre_code", where).get<std::string>(), project,
                             VersionTag::pre_patch);
    pair.post = make_function(name, require_field(j, "post_code", where).get<std::string>(),
                              project, VersionTag::post_patch);

    const json& truth = require_field(j, "ground_truth", where);
    check_keys(truth, kTruthKeys, "ground_truth of " + where, strict, warnings);
    pair.ground_truth.binary_label =
        binary_label_from_string(require_field(truth, "binary_label_pre", where).get<std::string>());
    pair.ground_truth.cwe_ids =
        require_field(truth, "cwe_ids", where).get<std::vector<std::string>>();
    pair.ground_truth.cve_description =
        require_field(truth, "cve_description", where).get<std::string>();
    pair.ground_truth.patch_diff = require_field(truth, "patch_diff", where).get<std::string>();
    pair.ground_truth.commit_message =
        require_field(truth, "commit_message", where).get<std::string>();

    pair.context_ref = require_field(j, "context_ref", where).get<std::string>();
    return pair;
}

json pair_to_json(const PairRecord& pair) {
    json truth{{"binary_label_pre", to_string(pair.ground_truth.binary_label)},
               {"cwe_ids", pair.ground_truth.cwe_ids},
               {"cve_description", pair.ground_truth.cve_description},
               {"patch_diff", pair.ground_truth.patch_diff},
               {"commit_message", pair.ground_truth.commit_message}};
    return json{{"pair_id", pair.pair_id},
                {"project_id", pair.pre.project_id},
                {"function_name", pair.pre.function_name},
                {"pre_code", pair.pre.source_code},
                {"post_code", pair.post.source_code},
                {"ground_truth", truth},
                {"context_ref", pair.context_ref}};
}

std::vector<PairRecord> load_corpus(const std::string& path, bool strict,
                                    std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open corpus file: " + path);

    std::vector<PairRecord> pairs;
    std::unordered_set<std::string> seen_ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (strings::trim(line).empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw SchemaError(std::string("invalid JSON: ") + e.what(), line_no);
        }
        PairRecord pair;
        try {
            pair = pair_from_json(j, strict, warnings);
            validate_pair(pair);
        } catch (const SchemaError& e) {
            throw SchemaError(e.what(), line_no);
        }
        if (!seen_ids.insert(pair.pair_id).second)
            throw InvariantError("duplicate pair_id '" + pair.pair_id + "' at line " +
                                 std::to_string(line_no));
        pairs.push_back(std::move(pair));
    }
    return pairs;
}

void save_corpus(const std::vector<PairRecord>& pairs, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open corpus file for writing: " + path);
    for (const auto& pair : pairs) out << pair_to_json(pair).dump() << '\n';
    if (!out) throw IoError("short write to corpus file: " + path);
}

CleanResult clean_corpus(const std::vector<PairRecord>& pairs, const context::ContextSet& ctx) {
    CleanResult result;
    std::set<std::string> seen;
    for (const auto& pair : pairs) {
        const std::string key = pair.pre.project_id + "\x1f" + pair.pre.function_name + "\x1f" +
                                digest::sha256_hex(strings::normalize_source(pair.pre.source_code));
        if (!seen.insert(key).second) {
            result.dropped.emplace_back(pair.pair_id, DropReason::duplicate);
            continue;
        }
        if (!ctx.resolves_function(pair.context_ref, pair.pre.function_name)) {
            result.dropped.emplace_back(pair.pair_id, DropReason::missing_context);
            continue;
        }
        result.kept.push_back(pair);
    }
    return result;
}

std::vector<PairRecord> sample_corpus(const std::vector<PairRecord>& pairs, std::size_t n,
                                      std::uint64_t seed) {
    if (n > pairs.size())
        throw ArgumentError("sample size " + std::to_string(n) + " exceeds corpus size " +
                            std::to_string(pairs.size()));
    std::vector<std::size_t> indices(pairs.size());
    std::iota(indices.begin(), indices.end(), 0);

    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = i + bounded_draw(rng, indices.size() - i);
        std::swap(indices[i], indices[j]);
    }
    indices.resize(n);
    std::sort(indices.begin(), indices.end());  // keep corpus order

    std::vector<PairRecord> sample;
    sample.reserve(n);
    for (std::size_t idx : indices) sample.push_back(pairs[idx]);
    return sample;
}

CorpusStats compute_stats(const std::vector<PairRecord>& pairs, const context::ContextSet& ctx) {
    CorpusStats stats;
    std::set<std::string> projects;
    bool first = true;
    for (const auto& pair : pairs) {
        const context::ContextStore* store = ctx.resolve(pair.context_ref);
        const context::ContextEntry* entry =
            store ? store->find(pair.pre.function_name) : nullptr;
        if (!entry) throw MissingContextError(pair.pair_id);

        projects.insert(pair.pre.project_id);

        // One-hop neighborhood: each neighbor body counted once even when a
        // function is both caller and callee.
        std::set<std::string> neighbors(entry->callers.begin(), entry->callers.end());
        neighbors.insert(entry->callees.begin(), entry->callees.end());
        std::size_t ctx_lines = 0;
        for (const auto& name : neighbors)
            if (const context::ContextEntry* n = store->find(name))
                ctx_lines += strings::count_lines(n->body);

        fold(stats.lines, static_cast<double>(pair.pre.line_count), first);
        fold(stats.context_lines, static_cast<double>(ctx_lines), first);
        fold(stats.callee_count, static_cast<double>(entry->callees.size()), first);
        fold(stats.caller_count, static_cast<double>(entry->callers.size()), first);
        first = false;
    }
    stats.pair_count = pairs.size();
    stats.project_count = projects.size();
    if (!pairs.empty()) {
        const double n = static_cast<double>(pairs.size());
        stats.lines.avg /= n;
        stats.context_lines.avg /= n;
        stats.callee_count.avg /= n;
        stats.caller_count.avg /= n;
    }
    return stats;
}

} // namespace vultriad::corpus
