// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace vultriad::llm {

enum class Role { system, user, assistant };
std::string to_string(Role role);

struct ChatMessage {
    Role role = Role::user;
    std::string content;
};

struct CompletionRequest {
    std::string model_id;
    std::vector<ChatMessage> messages;
    double temperature = 0.0;
    std::vector<std::string> stop_sequences;  // at most 4
    int max_output_tokens = 4096;             // generous by default
};

/// Validates the message discipline (optional leading system message, then
/// strictly alternating user/assistant starting with user, non-empty
/// content) and the stop-sequence cap. Throws ArgumentError.
void validate_request(const CompletionRequest& req);

struct Usage {
    std::uint64_t prompt_tokens = 0;
    std::uint64_t completion_tokens = 0;
    std::uint64_t request_count = 0;
    double estimated_cost_usd = 0.0;
};

struct CostModel {
    double prompt_usd_per_1k = 0.0025;
    double completion_usd_per_1k = 0.01;
};

struct BudgetLimits {
    std::uint64_t max_requests = 0;  // 0 = unlimited
    double max_cost_usd = 0.0;       // 0 = unlimited
};

/// Monotone, thread-safe accumulator for tokens/requests/cost. `charge`
/// throws BudgetExhaustedError once a configured limit is crossed.
class UsageMeter {
public:
    UsageMeter() = default;
    UsageMeter(CostModel cost, BudgetLimits limits) : cost_(cost), limits_(limits) {}

    void charge(const Usage& delta);
    Usage total() const;
    double cost_of(const Usage& delta) const;

private:
    mutable std::mutex mu_;
    Usage total_{};
    CostModel cost_{};
    BudgetLimits limits_{};
};

struct Completion {
    std::string text;  // stop sequence already excluded from the tail
    Usage usage;       // delta for this request
};

/// Canonical request digest: SHA-256 over (model, messages, stop,
/// temperature), key-order independent. max_output_tokens is excluded so
/// output-budget tweaks do not invalidate cassettes.
std::string request_digest(const CompletionRequest& req);

nlohmann::json request_to_json(const CompletionRequest& req);
nlohmann::json messages_to_json(const std::vector<ChatMessage>& messages);

/// Removes everything from the first occurrence of any stop sequence.
std::string apply_stop_sequences(std::string text, const std::vector<std::string>& stops);

class Backend {
public:
    virtual ~Backend() = default;
    virtual Completion complete(const CompletionRequest& req) = 0;
    virtual std::string name() const = 0;
};

/// complete() + usage accounting through a shared meter.
Completion complete(Backend& backend, const CompletionRequest& req, UsageMeter& meter);

// ---------------------------------------------------------------------------
// Offline backends

/// Serves a programmed FIFO of responses; each entry may instead carry an
/// error to throw. Token usage is estimated from character counts.
class ScriptedBackend : public Backend {
public:
    void push_response(std::string text);
    void push_error(std::function<void()> thrower);  // invoked in place of a response
    std::size_t remaining() const { return queue_.size(); }

    Completion complete(const CompletionRequest& req) override;
    std::string name() const override { return "scripted"; }

private:
    struct Entry {
        std::string text;
        std::function<void()> thrower;
    };
    std::deque<Entry> queue_;
    std::mutex mu_;
};

/// Serves recorded responses by request digest. Entries with the same
/// digest form a FIFO; once exhausted the last entry is re-served so a
/// rerun of an identical request stays deterministic.
class ReplayBackend : public Backend {
public:
    explicit ReplayBackend(const std::string& cassette_path);

    Completion complete(const CompletionRequest& req) override;
    std::string name() const override { return "replay"; }

private:
    struct Entry {
        std::string response;
        Usage usage;
    };
    std::map<std::string, std::deque<Entry>> by_digest_;
    std::map<std::string, Entry> last_served_;
    std::mutex mu_;
};

/// Wraps a live backend and appends {digest, request, response, usage}
/// JSON-lines entries to the cassette as they happen.
class RecordBackend : public Backend {
public:
    RecordBackend(std::unique_ptr<Backend> inner, const std::string& cassette_path);
    ~RecordBackend() override;

    Completion complete(const CompletionRequest& req) override;
    std::string name() const override { return "record"; }

private:
    std::unique_ptr<Backend> inner_;
    std::string path_;
    std::mutex mu_;
};

// ---------------------------------------------------------------------------
// Live backend

struct HttpOptions {
    std::string base_url;       // e.g. https://api.openai.com/v1
    std::string api_key;
    int max_attempts = 5;       // transport retries, exponential backoff + jitter
    double initial_backoff_s = 0.5;
    int rate_limit_rpm = 0;     // 0 = unlimited
    int timeout_s = 120;
};

/// OpenAI-compatible chat-completions client over HTTPS. Retries transport
/// errors and 429s (honoring Retry-After); context-window overflows are
/// surfaced as ContextWindowExceededError for history compaction.
class HttpBackend : public Backend {
public:
    explicit HttpBackend(HttpOptions options);

    Completion complete(const CompletionRequest& req) override;
    std::string name() const override { return "live"; }

private:
    void rate_limit_wait();

    HttpOptions options_;
    std::mutex mu_;
    std::chrono::steady_clock::time_point last_dispatch_{};
};

/// Resolves backend construction for the CLI `--backend` values. `scripted`
/// reads a JSONL file of {"response": ...} entries into a ScriptedBackend.
std::unique_ptr<Backend> make_backend(const std::string& kind, const std::string& cassette_path,
                                      const HttpOptions& http);

} // namespace vultriad::llm
