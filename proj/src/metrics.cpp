// SPDX-License-Identifier: Apache-2.0
#include "vultriad/metrics.hpp"

#include "vultriad/errors.hpp"

#include <algorithm>
#include <set>

namespace vultriad::metrics {

using nlohmann::json;

std::string to_string(Category category) {
    switch (category) {
        case Category::P_C: return "P_C";
        case Category::P_V: return "P_V";
        case Category::P_B: return "P_B";
        case Category::P_R: return "P_R";
    }
    return "P_R";
}

std::string to_string(EvalMode mode) {
    return mode == EvalMode::naive ? "naive" : "judged";
}

corpus::BinaryLabel truth_label_for_side(const corpus::GroundTruth& truth, results::Side side) {
    if (side == results::Side::pre_patch) return truth.binary_label;
    return truth.binary_label == corpus::BinaryLabel::vulnerable
               ? corpus::BinaryLabel::non_vulnerable
               : corpus::BinaryLabel::vulnerable;
}

bool correctness(const results::SideResult& side, corpus::BinaryLabel truth_side_label,
                 EvalMode mode) {
    if (mode == EvalMode::naive)
        return side.final_report.is_vulnerable ==
               (truth_side_label == corpus::BinaryLabel::vulnerable);
    return side.judgment && side.judgment->prediction == protocol::Verdict::match;
}

Category classify(bool pre_correct, bool post_correct) {
    if (pre_correct && post_correct) return Category::P_C;
    if (pre_correct) return Category::P_V;
    if (post_correct) return Category::P_B;
    return Category::P_R;
}

PairOutcome make_outcome(const std::string& pair_id, bool pre_correct, bool post_correct,
                         EvalMode mode) {
    PairOutcome outcome;
    outcome.pair_id = pair_id;
    outcome.pre_correct = pre_correct;
    outcome.post_correct = post_correct;
    outcome.category = classify(pre_correct, post_correct);
    outcome.eval_mode = mode;
    return outcome;
}

MetricsSummary aggregate(const std::vector<PairOutcome>& outcomes) {
    MetricsSummary summary;
    summary.n_pairs = outcomes.size();
    summary.counts = {{Category::P_C, 0}, {Category::P_V, 0}, {Category::P_B, 0},
                      {Category::P_R, 0}};
    for (const auto& outcome : outcomes) ++summary.counts[outcome.category];
    if (summary.n_pairs) {
        const double n = static_cast<double>(summary.n_pairs);
        summary.p_c = 100.0 * static_cast<double>(summary.counts[Category::P_C]) / n;
        summary.p_v = 100.0 * static_cast<double>(summary.counts[Category::P_V]) / n;
        summary.p_b = 100.0 * static_cast<double>(summary.counts[Category::P_B]) / n;
        summary.p_r = 100.0 * static_cast<double>(summary.counts[Category::P_R]) / n;
    }
    return summary;
}

std::optional<double> error_rate(const std::vector<PairOutcome>& naive,
                                 const std::vector<PairOutcome>& judged) {
    std::set<std::string> naive_ids, judged_ids;
    for (const auto& o : naive) naive_ids.insert(o.pair_id);
    for (const auto& o : judged) judged_ids.insert(o.pair_id);
    if (naive_ids != judged_ids)
        throw PairSetMismatchError("naive and judged outcome sets cover different pairs");

    std::set<std::string> judged_pc;
    for (const auto& o : judged)
        if (o.category == Category::P_C) judged_pc.insert(o.pair_id);

    std::size_t denom = 0, degraded = 0;
    for (const auto& o : naive) {
        if (o.category != Category::P_C) continue;
        ++denom;
        if (!judged_pc.count(o.pair_id)) ++degraded;
    }
    if (denom == 0) return std::nullopt;
    return 100.0 * static_cast<double>(degraded) / static_cast<double>(denom);
}

json summary_to_json(const MetricsSummary& summary) {
    json counts;
    for (const auto& [category, count] : summary.counts) counts[to_string(category)] = count;
    json j{{"n_pairs", summary.n_pairs},
           {"counts", counts},
           {"percentages",
            {{"p_c", summary.p_c}, {"p_v", summary.p_v}, {"p_b", summary.p_b},
             {"p_r", summary.p_r}}},
           {"flag_counts", summary.flag_counts}};
    j["error_rate"] = summary.error_rate ? json(*summary.error_rate) : json();
    return j;
}

json outcome_to_json(const PairOutcome& outcome) {
    return json{{"type", "pair_outcome"},
                {"pair_id", outcome.pair_id},
                {"pre_correct", outcome.pre_correct},
                {"post_correct", outcome.post_correct},
                {"category", to_string(outcome.category)},
                {"eval_mode", to_string(outcome.eval_mode)}};
}

PairOutcome outcome_from_json(const json& j) {
    PairOutcome outcome;
    outcome.pair_id = j.at("pair_id").get<std::string>();
    outcome.pre_correct = j.at("pre_correct").get<bool>();
    outcome.post_correct = j.at("post_correct").get<bool>();
    outcome.eval_mode =
        j.at("eval_mode").get<std::string>() == "judged" ? EvalMode::judged : EvalMode::naive;
    outcome.category = classify(outcome.pre_correct, outcome.post_correct);
    return outcome;
}

} // namespace vultriad::metrics
