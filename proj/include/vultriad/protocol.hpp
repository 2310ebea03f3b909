// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <nlohmann/json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vultriad::protocol {

inline const std::vector<std::string> kRegisteredTools = {"get_callees", "get_callers",
                                                          "get_function_body"};
bool is_registered_tool(const std::string& name);

/// One completed think/act/observe cycle of the analyst loop.
struct TrajectoryStep {
    std::string thought;
    std::string action;  // always one of the registered tools
    std::string action_input;
    std::string observation;
};

struct AnalystReport {
    bool is_vulnerable = false;
    std::string vulnerability_type = "None";
    std::string cwe_id = "N/A";
    std::string explanation;

    bool operator==(const AnalystReport&) const = default;
};

struct Critique {
    bool agreement = false;
    std::string feedback;
};

enum class Verdict { match, mismatch };
std::string to_string(Verdict v);

struct Judgment {
    Verdict prediction = Verdict::mismatch;
    std::string rationale;
};

/// Tool call as parsed from a turn (observation not yet attached).
struct ToolCall {
    std::string thought;
    std::string action;
    std::string action_input;
};

struct ParseOutcome {
    enum class Kind { tool_call, final_answer, malformed };
    Kind kind = Kind::malformed;
    ToolCall call;          // when kind == tool_call
    AnalystReport report;   // when kind == final_answer
    std::string diagnostic; // when kind == malformed, names the first violated rule
};

struct ParseOptions {
    bool tools_enabled = true;
};

/// Total function over one complete model turn (already stop-truncated
/// before any fabricated "Observation:"). Never throws; malformed input
/// becomes a malformed outcome handled by the re-prompt policy.
ParseOutcome parse_analyst_turn(const std::string& text, const ParseOptions& opts = {});

/// Lenient single-JSON-block parsers for the reviewing agents. The empty
/// optional carries its diagnostic through `diagnostic`.
std::optional<Critique> parse_critique(const std::string& text, std::string* diagnostic = nullptr);
std::optional<Judgment> parse_judgment(const std::string& text, std::string* diagnostic = nullptr);

/// Accepts Python-style literals (True/False/None), single-quoted strings,
/// and raw newlines inside strings, then parses as JSON. Returns nullopt on
/// anything still unparseable.
std::optional<nlohmann::json> lenient_json_parse(const std::string& text);

/// Extracts the JSON candidate from free text: the last ```json fence at or
/// after `from`, else the last plain fence, else a brace-balanced scan.
std::optional<std::string> extract_json_block(const std::string& text, std::size_t from = 0);

// ---------------------------------------------------------------------------
// Prompt templates

enum class TemplateId { analyst, architect, judge };

/// Versioned template text (the analyst variant without the TOOLS section
/// backs the no-tools configurations).
const std::string& template_text(TemplateId id, bool tools_enabled = true);
std::string template_version(TemplateId id, bool tools_enabled = true);
std::string template_digest(TemplateId id, bool tools_enabled = true);

/// Substitutes the registered placeholders for `id`; byte-stable. Throws
/// MissingBindingError when a required placeholder has no binding.
std::string render_prompt(TemplateId id, const std::map<std::string, std::string>& bindings,
                          bool tools_enabled = true);

inline constexpr const char* kEmptyHistorySentinel = "(none)";

// ---------------------------------------------------------------------------
// Canonical serialization

nlohmann::json report_to_json(const AnalystReport& report);
AnalystReport report_from_json(const nlohmann::json& j);
nlohmann::json critique_to_json(const Critique& critique);
nlohmann::json judgment_to_json(const Judgment& judgment);

/// "Final Answer:" block as emitted by a well-formed analyst turn.
std::string render_final_answer(const AnalystReport& report);

/// Plain-text rendering of a trajectory (Thought/Action/Action Input/
/// Observation per step), used for architect review and history.
std::string render_trajectory(const std::vector<TrajectoryStep>& steps);

} // namespace vultriad::protocol
