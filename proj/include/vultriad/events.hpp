// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <nlohmann/json.hpp>

#include <mutex>
#include <string>
#include <vector>

namespace vultriad::events {

/// One transcript line. `role` is "<agent>:<message-role>", e.g.
/// "analyst:assistant". `parsed` carries the parse outcome for assistant
/// turns and null for prompts/observations. No timestamps: event streams
/// must be byte-identical across replayed runs.
struct TranscriptEvent {
    std::string pair_id;
    std::string side;   // pre_patch | post_patch
    int round = 0;
    int turn_index = 0;
    std::string role;
    std::string raw_text;
    nlohmann::json parsed;  // null when not applicable
};

nlohmann::json to_json(const TranscriptEvent& event);

/// Per-pair collector; the orchestrator flushes whole pairs in
/// deterministic order regardless of worker completion order.
class EventLog {
public:
    void append(TranscriptEvent event);
    const std::vector<TranscriptEvent>& entries() const { return entries_; }
    int next_turn_index(const std::string& side);

private:
    std::vector<TranscriptEvent> entries_;
    int pre_turns_ = 0;
    int post_turns_ = 0;
};

} // namespace vultriad::events
