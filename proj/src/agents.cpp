// SPDX-License-Identifier: Apache-2.0
#include "vultriad/agents.hpp"

#include "vultriad/errors.hpp"
#include "vultriad/strings.hpp"

namespace vultriad::agents {

using llm::ChatMessage;
using llm::CompletionRequest;
using llm::Role;
using protocol::AnalystReport;
using protocol::Critique;
using protocol::Judgment;
using protocol::ParseOutcome;

namespace {

std::string corrective_reprompt(const std::string& diagnostic) {
    return "Your previous output did not follow the required format: " + diagnostic +
           ". Reply again following OUTPUT FORMAT exactly.";
}

std::string agent_role(const char* agent, Role role) {
    return std::string(agent) + ":" + llm::to_string(role);
}

void log_message(AgentEnv& env, const char* agent, const ChatMessage& msg,
                 nlohmann::json parsed = nullptr) {
    if (!env.events) return;
    events::TranscriptEvent event;
    event.pair_id = env.pair_id;
    event.side = results::to_string(env.side);
    event.round = env.round;
    event.turn_index = env.events->next_turn_index(event.side);
    event.role = agent_role(agent, msg.role);
    event.raw_text = msg.content;
    event.parsed = std::move(parsed);
    env.events->append(std::move(event));
}

nlohmann::json parse_outcome_json(const ParseOutcome& outcome) {
    switch (outcome.kind) {
        case ParseOutcome::Kind::tool_call:
            return {{"kind", "tool_call"},
                    {"action", outcome.call.action},
                    {"action_input", outcome.call.action_input}};
        case ParseOutcome::Kind::final_answer:
            return {{"kind", "final_answer"},
                    {"report", protocol::report_to_json(outcome.report)}};
        case ParseOutcome::Kind::malformed:
            return {{"kind", "malformed"}, {"diagnostic", outcome.diagnostic}};
    }
    return nullptr;
}

AnalystReport format_failure_report() {
    AnalystReport report;
    report.is_vulnerable = false;
    report.vulnerability_type = "None";
    report.cwe_id = "N/A";
    report.explanation = kFormatFailureExplanation;
    return report;
}

CompletionRequest base_request(const AgentEnv& env, std::vector<ChatMessage> messages,
                               std::vector<std::string> stops = {}) {
    CompletionRequest req;
    req.model_id = env.cfg.model_id;
    req.messages = std::move(messages);
    req.temperature = env.cfg.temperature;
    req.stop_sequences = std::move(stops);
    req.max_output_tokens = env.cfg.max_output_tokens;
    return req;
}

} // namespace

std::string RoundHistory::render() const {
    if (rounds.empty()) return protocol::kEmptyHistorySentinel;
    std::string out;
    for (std::size_t i = 0; i < rounds.size(); ++i) {
        const HistoryEntry& entry = rounds[i];
        if (i) out += "\n";
        out += "=== Round " + std::to_string(i + 1) + " ===\n";
        if (!compacted && !entry.trajectory_text.empty()) {
            out += "Trajectory:\n" + entry.trajectory_text;
            if (out.back() != '\n') out += '\n';
        }
        out += "Final Answer: ```json\n" + entry.report.dump(2) + "\n```\n";
        out += "Adjudicator's Critique:\n" + entry.critique.feedback + "\n";
    }
    return out;
}

std::string execute_tool(const context::ContextStore* store, const std::string& action,
                         const std::string& input, std::size_t budget_tokens) {
    // Every observation stays within the budget, list renderings included.
    auto capped = [budget_tokens](std::string text) {
        const std::size_t budget_chars = budget_tokens * context::kCharsPerToken;
        if (text.size() > budget_chars) {
            text.erase(budget_chars);
            text += "...[truncated]";
        }
        return text;
    };
    try {
        if (!store) throw UnknownFunctionError(input);
        if (action == "get_function_body")
            return context::get_function_body(*store, input, budget_tokens);
        if (action == "get_callers")
            return capped(
                nlohmann::json{{"callers", context::get_callers(*store, input)}}.dump());
        if (action == "get_callees")
            return capped(
                nlohmann::json{{"callees", context::get_callees(*store, input)}}.dump());
        return "Error: unknown tool '" + action + "'";
    } catch (const UnknownFunctionError& e) {
        return "Error: function '" + e.name() + "' not found in this project";
    }
}

AnalystRoundResult run_analyst_round(AgentEnv& env, const corpus::FunctionRecord& fn,
                                     const context::ContextStore* store,
                                     const RoundHistory& history) {
    AnalystRoundResult result;

    const std::string prompt = protocol::render_prompt(
        protocol::TemplateId::analyst,
        {{"function_code", fn.source_code}, {"history", history.render()}},
        env.cfg.tools_enabled);

    std::vector<ChatMessage> messages{{Role::user, prompt}};
    log_message(env, "analyst", messages.back());

    protocol::ParseOptions popts;
    popts.tools_enabled = env.cfg.tools_enabled;

    int malformed_count = 0;
    bool nudged = false;
    while (true) {
        llm::Completion completion =
            llm::complete(env.backend, base_request(env, messages, {"Observation:"}), env.meter);
        messages.push_back({Role::assistant, completion.text});

        const ParseOutcome outcome = protocol::parse_analyst_turn(completion.text, popts);
        log_message(env, "analyst", messages.back(), parse_outcome_json(outcome));

        if (outcome.kind == ParseOutcome::Kind::final_answer) {
            result.report = outcome.report;
            break;
        }

        if (nudged) {
            // Only a final answer is acceptable after the closing nudge.
            result.report = format_failure_report();
            result.format_failure = true;
            break;
        }

        if (outcome.kind == ParseOutcome::Kind::tool_call) {
            const std::string observation = execute_tool(store, outcome.call.action,
                                                         outcome.call.action_input,
                                                         env.cfg.tool_budget_tokens);
            result.trajectory.push_back(protocol::TrajectoryStep{
                outcome.call.thought, outcome.call.action, outcome.call.action_input,
                observation});
            ++result.step_count;

            std::string reply = "Observation: " + observation;
            if (result.step_count >= env.cfg.max_internal_steps) {
                reply += "\n\n";
                reply += kNudgeMessage;
                nudged = true;
            }
            messages.push_back({Role::user, reply});
            log_message(env, "analyst", messages.back());
            continue;
        }

        // Malformed turn: one corrective re-prompt, then the default report.
        if (++malformed_count >= 2) {
            result.report = format_failure_report();
            result.format_failure = true;
            break;
        }
        messages.push_back({Role::user, corrective_reprompt(outcome.diagnostic)});
        log_message(env, "analyst", messages.back());
    }

    result.raw_transcript = std::move(messages);
    return result;
}

std::string render_full_analysis(const AnalystRoundResult& analysis) {
    std::string out = protocol::render_trajectory(analysis.trajectory);
    if (!out.empty() && out.back() != '\n') out += '\n';
    out += protocol::render_final_answer(analysis.report);
    return out;
}

ArchitectResult run_architect(AgentEnv& env, const corpus::FunctionRecord& fn,
                              const AnalystRoundResult& analysis) {
    ArchitectResult result;

    const std::string prompt = protocol::render_prompt(
        protocol::TemplateId::architect,
        {{"function_code", fn.source_code},
         {"analyst_full_analysis", render_full_analysis(analysis)}});

    std::vector<ChatMessage> messages{{Role::user, prompt}};
    log_message(env, "architect", messages.back());

    for (int attempt = 0; attempt < 2; ++attempt) {
        llm::Completion completion =
            llm::complete(env.backend, base_request(env, messages), env.meter);
        messages.push_back({Role::assistant, completion.text});

        std::string diagnostic;
        const auto critique = protocol::parse_critique(completion.text, &diagnostic);
        log_message(env, "architect", messages.back(),
                    critique ? protocol::critique_to_json(*critique)
                             : nlohmann::json{{"kind", "malformed"}, {"diagnostic", diagnostic}});
        if (critique) {
            result.critique = *critique;
            return result;
        }
        if (attempt == 0) {
            messages.push_back({Role::user, corrective_reprompt(diagnostic)});
            log_message(env, "architect", messages.back());
        }
    }

    result.critique = Critique{true, "format failure - accepted by default"};
    result.format_failure = true;
    return result;
}

nlohmann::json ground_truth_to_json(const corpus::GroundTruth& truth, results::Side side) {
    return nlohmann::json{{"side", results::to_string(side)},
                          {"binary_label", corpus::to_string(truth.binary_label)},
                          {"cwe_ids", truth.cwe_ids},
                          {"cve_description", truth.cve_description},
                          {"patch_diff", truth.patch_diff},
                          {"commit_message", truth.commit_message}};
}

JudgeResult run_judge(AgentEnv& env, const protocol::AnalystReport& report,
                      const corpus::GroundTruth& truth, results::Side side) {
    JudgeResult result;

    const std::string prompt = protocol::render_prompt(
        protocol::TemplateId::judge,
        {{"agent_output", protocol::report_to_json(report).dump(2)},
         {"ground_truth", ground_truth_to_json(truth, side).dump(2)}});

    std::vector<ChatMessage> messages{{Role::user, prompt}};
    log_message(env, "judge", messages.back());

    for (int attempt = 0; attempt < 2; ++attempt) {
        llm::Completion completion =
            llm::complete(env.backend, base_request(env, messages), env.meter);
        messages.push_back({Role::assistant, completion.text});

        std::string diagnostic;
        const auto judgment = protocol::parse_judgment(completion.text, &diagnostic);
        log_message(env, "judge", messages.back(),
                    judgment ? protocol::judgment_to_json(*judgment)
                             : nlohmann::json{{"kind", "malformed"}, {"diagnostic", diagnostic}});
        if (judgment) {
            result.judgment = *judgment;
            return result;
        }
        if (attempt == 0) {
            messages.push_back({Role::user, corrective_reprompt(diagnostic)});
            log_message(env, "judge", messages.back());
        }
    }

    result.judgment = Judgment{protocol::Verdict::mismatch, "judge format failure"};
    result.format_failure = true;
    return result;
}

} // namespace vultriad::agents
