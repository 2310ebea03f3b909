// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "vultriad/protocol.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <set>
#include <string>

namespace vultriad::results {

enum class Side { pre_patch, post_patch };
std::string to_string(Side side);
Side side_from_string(const std::string& s);

enum class Flag { format_failure, compacted, budget_exhausted };
std::string to_string(Flag flag);

/// Outcome of the multi-round negotiation for one side of a pair.
struct SideResult {
    Side side = Side::pre_patch;
    int rounds_used = 0;
    bool consensus = false;
    protocol::AnalystReport final_report;
    std::optional<protocol::Judgment> judgment;
    std::set<Flag> flags;
};

nlohmann::json side_result_to_json(const std::string& pair_id, const SideResult& result);
SideResult side_result_from_json(const nlohmann::json& j);

} // namespace vultriad::results
