// SPDX-License-Identifier: Apache-2.0
#include "vultriad/protocol.hpp"

#include "vultriad/strings.hpp"

#include <algorithm>
#include <cctype>

namespace vultriad::protocol {

using nlohmann::json;

bool is_registered_tool(const std::string& name) {
    return std::find(kRegisteredTools.begin(), kRegisteredTools.end(), name) !=
           kRegisteredTools.end();
}

std::string to_string(Verdict v) {
    return v == Verdict::match ? "MATCH" : "MISMATCH";
}

// ---------------------------------------------------------------------------
// Lenient JSON

namespace {

void append_escaped_control(std::string& out, char c) {
    switch (c) {
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default: {
            char buf[8];
            std::snprintf(buf, sizeof(buf), "\\u%04x", static_cast<unsigned char>(c));
            out += buf;
        }
    }
}

// Rewrites Python-flavored JSON (True/False/None, 'single quotes', raw
// newlines inside strings) into strict JSON.
std::string normalize_jsonish(const std::string& text) {
    std::string out;
    out.reserve(text.size() + 16);
    enum class State { outside, in_double, in_single };
    State state = State::outside;

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        switch (state) {
            case State::outside:
                if (c == '"') {
                    state = State::in_double;
                    out += c;
                } else if (c == '\'') {
                    state = State::in_single;
                    out += '"';
                } else if (std::isalpha(static_cast<unsigned char>(c))) {
                    std::size_t j = i;
                    while (j < text.size() &&
                           (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                        ++j;
                    const std::string word = text.substr(i, j - i);
                    if (word == "True") out += "true";
                    else if (word == "False") out += "false";
                    else if (word == "None") out += "null";
                    else out += word;
                    i = j - 1;
                } else {
                    out += c;
                }
                break;
            case State::in_double:
                if (c == '\\' && i + 1 < text.size()) {
                    out += c;
                    out += text[++i];
                } else if (c == '"') {
                    state = State::outside;
                    out += c;
                } else if (static_cast<unsigned char>(c) < 0x20) {
                    append_escaped_control(out, c);
                } else {
                    out += c;
                }
                break;
            case State::in_single:
                if (c == '\\' && i + 1 < text.size()) {
                    const char next = text[i + 1];
                    if (next == '\'') {
                        out += '\'';  // JSON strings do not escape single quotes
                    } else {
                        out += c;
                        out += next;
                    }
                    ++i;
                } else if (c == '\'') {
                    state = State::outside;
                    out += '"';
                } else if (c == '"') {
                    out += "\\\"";
                } else if (static_cast<unsigned char>(c) < 0x20) {
                    append_escaped_control(out, c);
                } else {
                    out += c;
                }
                break;
        }
    }
    return out;
}

// Finds the brace-balanced object starting at the first '{' at/after `from`,
// tracking string state so braces inside strings do not count.
std::optional<std::string> balanced_object(const std::string& text, std::size_t from) {
    const std::size_t start = text.find('{', from);
    if (start == std::string::npos) return std::nullopt;
    enum class State { outside, in_double, in_single };
    State state = State::outside;
    int depth = 0;
    for (std::size_t i = start; i < text.size(); ++i) {
        const char c = text[i];
        if (state == State::outside) {
            if (c == '{') ++depth;
            else if (c == '}') {
                if (--depth == 0) return text.substr(start, i - start + 1);
            } else if (c == '"') state = State::in_double;
            else if (c == '\'') state = State::in_single;
        } else if (state == State::in_double) {
            if (c == '\\') ++i;
            else if (c == '"') state = State::outside;
            // Raw newlines terminate nothing here; lenient strings may span lines.
        } else {
            if (c == '\\') ++i;
            else if (c == '\'') state = State::outside;
        }
    }
    return std::nullopt;
}

struct Fence {
    std::size_t body_begin;
    std::size_t body_end;
    bool tagged_json;
};

std::vector<Fence> find_fences(const std::string& text, std::size_t from) {
    std::vector<Fence> fences;
    std::size_t pos = from;
    while (true) {
        const std::size_t open = text.find("```", pos);
        if (open == std::string::npos) break;
        std::size_t body = open + 3;
        bool tagged = false;
        if (text.compare(body, 4, "json") == 0) {
            tagged = true;
            body += 4;
        }
        if (body < text.size() && text[body] == '\n') ++body;
        const std::size_t close = text.find("```", body);
        if (close == std::string::npos) break;
        fences.push_back(Fence{body, close, tagged});
        pos = close + 3;
    }
    return fences;
}

} // namespace

std::optional<std::string> extract_json_block(const std::string& text, std::size_t from) {
    const auto fences = find_fences(text, from);
    // Last json-tagged fence wins; models often echo the schema before the
    // real answer.
    for (auto it = fences.rbegin(); it != fences.rend(); ++it)
        if (it->tagged_json) return text.substr(it->body_begin, it->body_end - it->body_begin);
    if (!fences.empty()) {
        const Fence& f = fences.back();
        return text.substr(f.body_begin, f.body_end - f.body_begin);
    }
    return balanced_object(text, from);
}

std::optional<json> lenient_json_parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (!j.is_discarded()) return j;
    j = json::parse(normalize_jsonish(text), nullptr, false);
    if (!j.is_discarded()) return j;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Turn parsing

namespace {

std::optional<bool> boolish(const json& v) {
    if (v.is_boolean()) return v.get<bool>();
    if (v.is_string()) {
        const std::string s = strings::to_lower(strings::trim(v.get<std::string>()));
        if (s == "true") return true;
        if (s == "false") return false;
    }
    return std::nullopt;
}

std::string string_or(const json& obj, const char* key, const std::string& fallback) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return fallback;
    if (it->is_string()) return it->get<std::string>();
    return it->dump();
}

struct Line {
    std::size_t offset;  // into the original text
    std::string text;
};

std::vector<Line> index_lines(const std::string& text) {
    std::vector<Line> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t nl = text.find('\n', start);
        if (nl == std::string::npos) {
            lines.push_back(Line{start, text.substr(start)});
            break;
        }
        lines.push_back(Line{start, text.substr(start, nl - start)});
        start = nl + 1;
    }
    return lines;
}

std::optional<std::string> line_value(const std::string& line, const char* marker) {
    const std::string trimmed_lead = line.substr(line.find_first_not_of(" \t") == std::string::npos
                                                     ? line.size()
                                                     : line.find_first_not_of(" \t"));
    if (trimmed_lead.rfind(marker, 0) != 0) return std::nullopt;
    return strings::trim(trimmed_lead.substr(std::string(marker).size()));
}

} // namespace

ParseOutcome parse_analyst_turn(const std::string& text, const ParseOptions& opts) {
    ParseOutcome outcome;

    // Defense in depth: drop anything after a fabricated observation even if
    // the stop sequence did not fire upstream.
    std::string turn = text;
    const auto all_lines = index_lines(turn);
    for (const auto& line : all_lines) {
        if (line_value(line.text, "Observation:")) {
            turn.erase(line.offset);
            break;
        }
    }

    const std::size_t marker = turn.rfind("Final Answer:");
    if (marker != std::string::npos) {
        const auto block = extract_json_block(turn, marker);
        const auto parsed = block ? lenient_json_parse(*block) : std::nullopt;
        if (parsed && parsed->is_object()) {
            const auto flag = parsed->contains("is_vulnerable")
                                  ? boolish(parsed->at("is_vulnerable"))
                                  : std::nullopt;
            if (!flag) {
                outcome.diagnostic = "final answer JSON lacks a boolean 'is_vulnerable' field";
                return outcome;
            }
            AnalystReport report;
            report.is_vulnerable = *flag;
            report.vulnerability_type = string_or(*parsed, "vulnerability_type", "None");
            report.cwe_id = string_or(*parsed, "cwe_id", "N/A");
            report.explanation = string_or(*parsed, "explanation", "");
            if (strings::trim(report.explanation).empty()) {
                outcome.diagnostic = "final answer JSON lacks a non-empty 'explanation' field";
                return outcome;
            }
            outcome.kind = ParseOutcome::Kind::final_answer;
            outcome.report = std::move(report);
            return outcome;
        }
        outcome.diagnostic = "'Final Answer:' marker without a parseable JSON block";
        return outcome;
    }

    // No final answer: look for the last Action / Action Input pair.
    const auto lines = index_lines(turn);
    std::ptrdiff_t action_idx = -1;
    for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(lines.size()) - 1; i >= 0; --i) {
        if (line_value(lines[i].text, "Action:")) {
            action_idx = i;
            break;
        }
    }
    if (action_idx < 0) {
        outcome.diagnostic = "turn contains neither a 'Final Answer:' nor an 'Action:' line";
        return outcome;
    }

    const std::string action = strings::unquote(*line_value(lines[action_idx].text, "Action:"));
    std::optional<std::string> input;
    for (std::size_t i = action_idx + 1; i < lines.size(); ++i) {
        if (auto v = line_value(lines[i].text, "Action Input:")) {
            input = strings::unquote(*v);
            break;
        }
        if (line_value(lines[i].text, "Action:")) break;
    }

    if (!opts.tools_enabled) {
        outcome.diagnostic = "tool calls are not available in this configuration";
        return outcome;
    }
    if (!is_registered_tool(action)) {
        outcome.diagnostic = "unregistered tool '" + action + "'";
        return outcome;
    }
    if (!input) {
        outcome.diagnostic = "'Action:' line without a following 'Action Input:' line";
        return outcome;
    }

    // Capture the nearest Thought block preceding the action.
    std::string thought;
    for (std::ptrdiff_t i = action_idx - 1; i >= 0; --i) {
        if (auto v = line_value(lines[i].text, "Thought:")) {
            const std::size_t begin = lines[i].offset + lines[i].text.find("Thought:") + 8;
            const std::size_t end = lines[action_idx].offset;
            thought = strings::trim(turn.substr(begin, end - begin));
            break;
        }
    }

    outcome.kind = ParseOutcome::Kind::tool_call;
    outcome.call = ToolCall{std::move(thought), action, *input};
    return outcome;
}

std::optional<Critique> parse_critique(const std::string& text, std::string* diagnostic) {
    const auto block = extract_json_block(text);
    const auto parsed = block ? lenient_json_parse(*block) : std::nullopt;
    if (!parsed || !parsed->is_object()) {
        if (diagnostic) *diagnostic = "critique is not a parseable JSON block";
        return std::nullopt;
    }
    const auto agreement =
        parsed->contains("agreement") ? boolish(parsed->at("agreement")) : std::nullopt;
    if (!agreement) {
        if (diagnostic) *diagnostic = "critique JSON lacks a boolean 'agreement' field";
        return std::nullopt;
    }
    Critique critique;
    critique.agreement = *agreement;
    critique.feedback = string_or(*parsed, "feedback", "");
    if (strings::trim(critique.feedback).empty()) {
        if (diagnostic) *diagnostic = "critique JSON lacks a non-empty 'feedback' field";
        return std::nullopt;
    }
    return critique;
}

std::optional<Judgment> parse_judgment(const std::string& text, std::string* diagnostic) {
    const auto block = extract_json_block(text);
    const auto parsed = block ? lenient_json_parse(*block) : std::nullopt;
    if (!parsed || !parsed->is_object()) {
        if (diagnostic) *diagnostic = "judgment is not a parseable JSON block";
        return std::nullopt;
    }
    if (!parsed->contains("prediction") || !parsed->at("prediction").is_string()) {
        if (diagnostic) *diagnostic = "judgment JSON lacks a string 'prediction' field";
        return std::nullopt;
    }
    std::string value = strings::to_lower(strings::unquote(parsed->at("prediction").get<std::string>()));
    Judgment judgment;
    if (value == "match") judgment.prediction = Verdict::match;
    else if (value == "mismatch") judgment.prediction = Verdict::mismatch;
    else {
        if (diagnostic) *diagnostic = "prediction must be 'MATCH' or 'MISMATCH', got '" + value + "'";
        return std::nullopt;
    }
    judgment.rationale = string_or(*parsed, "rationale", "");
    return judgment;
}

// ---------------------------------------------------------------------------
// Serialization

json report_to_json(const AnalystReport& report) {
    return json{{"is_vulnerable", report.is_vulnerable},
                {"vulnerability_type", report.vulnerability_type},
                {"cwe_id", report.cwe_id},
                {"explanation", report.explanation}};
}

AnalystReport report_from_json(const json& j) {
    AnalystReport report;
    report.is_vulnerable = j.value("is_vulnerable", false);
    report.vulnerability_type = j.value("vulnerability_type", "None");
    report.cwe_id = j.value("cwe_id", "N/A");
    report.explanation = j.value("explanation", "");
    return report;
}

json critique_to_json(const Critique& critique) {
    return json{{"agreement", critique.agreement}, {"feedback", critique.feedback}};
}

json judgment_to_json(const Judgment& judgment) {
    return json{{"prediction", to_string(judgment.prediction)},
                {"rationale", judgment.rationale}};
}

std::string render_final_answer(const AnalystReport& report) {
    return "Final Answer: ```json\n" + report_to_json(report).dump(2) + "\n```";
}

std::string render_trajectory(const std::vector<TrajectoryStep>& steps) {
    std::string out;
    for (const auto& step : steps) {
        if (!out.empty()) out += "\n";
        out += "Thought: " + step.thought + "\n";
        out += "Action: " + step.action + "\n";
        out += "Action Input: " + step.action_input + "\n";
        out += "Observation: " + step.observation + "\n";
    }
    return out;
}

} // namespace vultriad::protocol
