// SPDX-License-Identifier: Apache-2.0
#include "vultriad/results.hpp"

#include "vultriad/errors.hpp"

namespace vultriad::results {

using nlohmann::json;

std::string to_string(Side side) {
    return side == Side::pre_patch ? "pre_patch" : "post_patch";
}

Side side_from_string(const std::string& s) {
    if (s == "pre_patch") return Side::pre_patch;
    if (s == "post_patch") return Side::post_patch;
    throw SchemaError("unknown side '" + s + "'");
}

std::string to_string(Flag flag) {
    switch (flag) {
        case Flag::format_failure: return "format_failure";
        case Flag::compacted: return "compacted";
        case Flag::budget_exhausted: return "budget_exhausted";
    }
    return "format_failure";
}

json side_result_to_json(const std::string& pair_id, const SideResult& result) {
    json flags = json::array();
    for (Flag flag : result.flags) flags.push_back(to_string(flag));
    json j{{"type", "side_result"},
           {"pair_id", pair_id},
           {"side", to_string(result.side)},
           {"rounds_used", result.rounds_used},
           {"consensus", result.consensus},
           {"final_report", protocol::report_to_json(result.final_report)},
           {"flags", flags}};
    j["judgment"] = result.judgment ? protocol::judgment_to_json(*result.judgment) : json();
    return j;
}

SideResult side_result_from_json(const json& j) {
    SideResult result;
    result.side = side_from_string(j.at("side").get<std::string>());
    result.rounds_used = j.at("rounds_used").get<int>();
    result.consensus = j.at("consensus").get<bool>();
    result.final_report = protocol::report_from_json(j.at("final_report"));
    if (j.contains("judgment") && !j.at("judgment").is_null()) {
        protocol::Judgment judgment;
        const json& jj = j.at("judgment");
        judgment.prediction = jj.at("prediction").get<std::string>() == "MATCH"
                                  ? protocol::Verdict::match
                                  : protocol::Verdict::mismatch;
        judgment.rationale = jj.value("rationale", "");
        result.judgment = judgment;
    }
    for (const auto& flag : j.value("flags", std::vector<std::string>{})) {
        if (flag == "format_failure") result.flags.insert(Flag::format_failure);
        else if (flag == "compacted") result.flags.insert(Flag::compacted);
        else if (flag == "budget_exhausted") result.flags.insert(Flag::budget_exhausted);
    }
    return result;
}

} // namespace vultriad::results
