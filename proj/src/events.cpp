// SPDX-License-Identifier: Apache-2.0
#include "vultriad/events.hpp"

namespace vultriad::events {

nlohmann::json to_json(const TranscriptEvent& event) {
    return nlohmann::json{{"pair_id", event.pair_id}, {"side", event.side},
                          {"round", event.round},     {"turn_index", event.turn_index},
                          {"role", event.role},       {"raw_text", event.raw_text},
                          {"parsed", event.parsed}};
}

void EventLog::append(TranscriptEvent event) {
    entries_.push_back(std::move(event));
}

int EventLog::next_turn_index(const std::string& side) {
    return side == "pre_patch" ? pre_turns_++ : post_turns_++;
}

} // namespace vultriad::events
