// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "vultriad/llm.hpp"

#include <cstdint>
#include <string>

namespace vultriad {

/// Ablation presets: which components of the full pipeline are active.
enum class Mode { mavul, cot, single_agent, no_context };

Mode mode_from_string(const std::string& s);
std::string to_string(Mode mode);

struct RunConfig {
    std::string model_id = "gpt-4o-2024-08-06";
    int max_rounds = 3;
    int max_internal_steps = 10;
    bool tools_enabled = true;
    bool architect_enabled = true;
    bool judge_enabled = true;
    std::uint64_t seed = 0;
    std::size_t sample_n = 0;  // 0 = whole corpus
    double temperature = 0.0;
    int max_output_tokens = 4096;
    std::size_t tool_budget_tokens = 2048;
    int workers = 1;
    int rate_limit_rpm = 0;
    llm::BudgetLimits budgets;
    llm::CostModel cost_model;

    /// Test/interruption hook: stop cleanly after this many pairs (0 = all).
    std::size_t stop_after_pairs = 0;

    void apply_mode(Mode mode);
    Mode mode() const;

    /// Throws ArgumentError on out-of-range values; called before any
    /// backend traffic.
    void validate() const;
};

} // namespace vultriad
