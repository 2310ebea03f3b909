// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "vultriad/config.hpp"
#include "vultriad/context.hpp"
#include "vultriad/corpus.hpp"
#include "vultriad/events.hpp"
#include "vultriad/llm.hpp"
#include "vultriad/protocol.hpp"
#include "vultriad/results.hpp"

#include <string>
#include <vector>

namespace vultriad::agents {

/// Everything one side's agent conversations need, bundled so signatures
/// stay short. One instance per (pair, side); strictly sequential use.
struct AgentEnv {
    llm::Backend& backend;
    llm::UsageMeter& meter;
    const RunConfig& cfg;
    events::EventLog* events = nullptr;
    std::string pair_id;
    results::Side side = results::Side::pre_patch;
    int round = 1;
};

struct AnalystRoundResult {
    std::vector<protocol::TrajectoryStep> trajectory;
    protocol::AnalystReport report;
    std::vector<llm::ChatMessage> raw_transcript;
    int step_count = 0;
    bool format_failure = false;
};

/// Prior rounds as remembered by the analyst. Compaction drops trajectories
/// but keeps reports and critiques verbatim.
struct HistoryEntry {
    std::string trajectory_text;
    nlohmann::json report;
    protocol::Critique critique;
};

struct RoundHistory {
    std::vector<HistoryEntry> rounds;
    bool compacted = false;

    /// Text bound to the {history} placeholder; "(none)" when empty.
    std::string render() const;
};

/// Dispatches one registered tool against the store and renders the result
/// as a single observation string; lookups of unknown names come back as
/// error observations, never as pipeline failures.
std::string execute_tool(const context::ContextStore* store, const std::string& action,
                         const std::string& input, std::size_t budget_tokens);

/// One ReAct round: prompt (+ transcript so far) with stop "Observation:",
/// executing tool calls until a final answer, the step cap, or the
/// malformed-turn policy ends the round.
AnalystRoundResult run_analyst_round(AgentEnv& env, const corpus::FunctionRecord& fn,
                                     const context::ContextStore* store,
                                     const RoundHistory& history);

struct ArchitectResult {
    protocol::Critique critique;
    bool format_failure = false;
};

/// Single-turn review of the analyst's full trajectory and report.
ArchitectResult run_architect(AgentEnv& env, const corpus::FunctionRecord& fn,
                              const AnalystRoundResult& analysis);

struct JudgeResult {
    protocol::Judgment judgment;
    bool format_failure = false;
};

/// Ground-truth-aware scoring of the frozen final report. Never invoked
/// before the negotiation finishes.
JudgeResult run_judge(AgentEnv& env, const protocol::AnalystReport& report,
                      const corpus::GroundTruth& truth, results::Side side);

/// Serialized ground truth as the judge sees it (side marker included).
nlohmann::json ground_truth_to_json(const corpus::GroundTruth& truth, results::Side side);

/// Trajectory + final JSON assessment, as handed to the architect.
std::string render_full_analysis(const AnalystRoundResult& analysis);

inline constexpr const char* kNudgeMessage = "You must now provide your Final Answer.";
inline constexpr const char* kFormatFailureExplanation = "format failure";

} // namespace vultriad::agents
