// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "vultriad/corpus.hpp"
#include "vultriad/results.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vultriad::metrics {

enum class Category { P_C, P_V, P_B, P_R };
std::string to_string(Category category);

enum class EvalMode { naive, judged };
std::string to_string(EvalMode mode);

struct PairOutcome {
    std::string pair_id;
    bool pre_correct = false;
    bool post_correct = false;
    Category category = Category::P_R;
    EvalMode eval_mode = EvalMode::naive;
};

struct MetricsSummary {
    std::size_t n_pairs = 0;
    std::map<Category, std::size_t> counts;
    double p_c = 0, p_v = 0, p_b = 0, p_r = 0;  // percentages, full precision
    std::optional<double> error_rate;
    std::map<std::string, std::size_t> flag_counts;
};

/// Whether one side counts as correct. Naive mode compares the report's
/// binary label against the side's truth label; judged mode trusts the
/// judge's MATCH/MISMATCH (which already encodes side directionality).
/// A judged side without a judgment counts as not confirmed.
bool correctness(const results::SideResult& side, corpus::BinaryLabel truth_side_label,
                 EvalMode mode);

/// The side's truth label: the pair-level label on the pre side, its
/// complement on the post side.
corpus::BinaryLabel truth_label_for_side(const corpus::GroundTruth& truth, results::Side side);

Category classify(bool pre_correct, bool post_correct);

PairOutcome make_outcome(const std::string& pair_id, bool pre_correct, bool post_correct,
                         EvalMode mode);

MetricsSummary aggregate(const std::vector<PairOutcome>& outcomes);

/// 100 x |naive-P_C pairs that stop being P_C under judging| / |naive-P_C|;
/// absent when no pair is naive-P_C. Throws PairSetMismatchError when the
/// two lists cover different pair ids.
std::optional<double> error_rate(const std::vector<PairOutcome>& naive,
                                 const std::vector<PairOutcome>& judged);

nlohmann::json summary_to_json(const MetricsSummary& summary);
nlohmann::json outcome_to_json(const PairOutcome& outcome);
PairOutcome outcome_from_json(const nlohmann::json& j);

} // namespace vultriad::metrics
