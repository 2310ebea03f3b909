// SPDX-License-Identifier: Apache-2.0
#include "vultriad/config.hpp"

#include "vultriad/errors.hpp"

namespace vultriad {

Mode mode_from_string(const std::string& s) {
    if (s == "mavul") return Mode::mavul;
    if (s == "cot") return Mode::cot;
    if (s == "single-agent") return Mode::single_agent;
    if (s == "no-context") return Mode::no_context;
    throw ArgumentError("unknown mode '" + s + "' (expected mavul, cot, single-agent, no-context)");
}

std::string to_string(Mode mode) {
    switch (mode) {
        case Mode::mavul: return "mavul";
        case Mode::cot: return "cot";
        case Mode::single_agent: return "single-agent";
        case Mode::no_context: return "no-context";
    }
    return "mavul";
}

void RunConfig::apply_mode(Mode mode) {
    switch (mode) {
        case Mode::mavul:
            tools_enabled = true;
            architect_enabled = true;
            break;
        case Mode::cot:
            tools_enabled = false;
            architect_enabled = false;
            break;
        case Mode::single_agent:
            tools_enabled = true;
            architect_enabled = false;
            break;
        case Mode::no_context:
            tools_enabled = false;
            architect_enabled = true;
            break;
    }
}

Mode RunConfig::mode() const {
    if (tools_enabled && architect_enabled) return Mode::mavul;
    if (tools_enabled) return Mode::single_agent;
    if (architect_enabled) return Mode::no_context;
    return Mode::cot;
}

void RunConfig::validate() const {
    if (max_rounds < 1) throw ArgumentError("max_rounds must be >= 1");
    if (max_internal_steps < 1) throw ArgumentError("max_internal_steps must be >= 1");
    if (model_id.empty()) throw ArgumentError("model_id must be set");
    if (temperature < 0.0) throw ArgumentError("temperature must be >= 0");
    if (max_output_tokens < 1) throw ArgumentError("max_output_tokens must be >= 1");
    if (workers < 1) throw ArgumentError("workers must be >= 1");
}

} // namespace vultriad
