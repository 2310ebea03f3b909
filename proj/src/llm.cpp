// SPDX-License-Identifier: Apache-2.0
#include "vultriad/llm.hpp"

#include "vultriad/digest.hpp"
#include "vultriad/errors.hpp"
#include "vultriad/strings.hpp"

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <cstdlib>
#include <fstream>
#include <random>
#include <thread>

namespace vultriad::llm {

using nlohmann::json;

std::string to_string(Role role) {
    switch (role) {
        case Role::system: return "system";
        case Role::user: return "user";
        case Role::assistant: return "assistant";
    }
    return "user";
}

void validate_request(const CompletionRequest& req) {
    if (req.model_id.empty()) throw ArgumentError("request has no model_id");
    if (req.messages.empty()) throw ArgumentError("request has no messages");
    if (req.stop_sequences.size() > 4) throw ArgumentError("more than 4 stop sequences");

    std::size_t i = 0;
    if (req.messages[0].role == Role::system) i = 1;
    Role expected = Role::user;
    for (; i < req.messages.size(); ++i) {
        const auto& msg = req.messages[i];
        if (msg.role != expected)
            throw ArgumentError("messages must alternate user/assistant after an optional "
                                "leading system message (position " + std::to_string(i) + ")");
        if (msg.content.empty())
            throw ArgumentError("empty content at message " + std::to_string(i));
        expected = expected == Role::user ? Role::assistant : Role::user;
    }
}

void UsageMeter::charge(const Usage& delta) {
    std::lock_guard lock(mu_);
    total_.prompt_tokens += delta.prompt_tokens;
    total_.completion_tokens += delta.completion_tokens;
    total_.request_count += delta.request_count;
    total_.estimated_cost_usd += cost_of(delta);
    if (limits_.max_requests && total_.request_count > limits_.max_requests)
        throw BudgetExhaustedError("request budget of " + std::to_string(limits_.max_requests) +
                                   " exhausted");
    if (limits_.max_cost_usd > 0 && total_.estimated_cost_usd > limits_.max_cost_usd)
        throw BudgetExhaustedError("cost budget exhausted");
}

Usage UsageMeter::total() const {
    std::lock_guard lock(mu_);
    return total_;
}

double UsageMeter::cost_of(const Usage& delta) const {
    return static_cast<double>(delta.prompt_tokens) / 1000.0 * cost_.prompt_usd_per_1k +
           static_cast<double>(delta.completion_tokens) / 1000.0 * cost_.completion_usd_per_1k;
}

json messages_to_json(const std::vector<ChatMessage>& messages) {
    json arr = json::array();
    for (const auto& msg : messages)
        arr.push_back(json{{"role", to_string(msg.role)}, {"content", msg.content}});
    return arr;
}

json request_to_json(const CompletionRequest& req) {
    return json{{"model", req.model_id},
                {"messages", messages_to_json(req.messages)},
                {"temperature", req.temperature},
                {"stop", req.stop_sequences},
                {"max_tokens", req.max_output_tokens}};
}

std::string request_digest(const CompletionRequest& req) {
    // nlohmann::json serializes object keys sorted, so the dump is a
    // canonical form regardless of construction order.
    json canonical{{"model", req.model_id},
                   {"messages", messages_to_json(req.messages)},
                   {"temperature", req.temperature},
                   {"stop", req.stop_sequences}};
    return digest::sha256_hex(canonical.dump());
}

std::string apply_stop_sequences(std::string text, const std::vector<std::string>& stops) {
    std::size_t cut = std::string::npos;
    for (const auto& stop : stops) {
        if (stop.empty()) continue;
        const std::size_t pos = text.find(stop);
        if (pos != std::string::npos) cut = std::min(cut, pos);
    }
    if (cut != std::string::npos) text.erase(cut);
    return text;
}

Completion complete(Backend& backend, const CompletionRequest& req, UsageMeter& meter) {
    validate_request(req);
    Completion completion = backend.complete(req);
    completion.text = apply_stop_sequences(std::move(completion.text), req.stop_sequences);
    meter.charge(completion.usage);
    return completion;
}

// ---------------------------------------------------------------------------
// ScriptedBackend

namespace {

std::uint64_t estimate_tokens(std::size_t chars) {
    return (chars + 3) / 4;
}

std::uint64_t estimate_prompt_tokens(const CompletionRequest& req) {
    std::size_t chars = 0;
    for (const auto& msg : req.messages) chars += msg.content.size();
    return estimate_tokens(chars);
}

} // namespace

void ScriptedBackend::push_response(std::string text) {
    std::lock_guard lock(mu_);
    queue_.push_back(Entry{std::move(text), nullptr});
}

void ScriptedBackend::push_error(std::function<void()> thrower) {
    std::lock_guard lock(mu_);
    queue_.push_back(Entry{{}, std::move(thrower)});
}

Completion ScriptedBackend::complete(const CompletionRequest& req) {
    Entry entry;
    {
        std::lock_guard lock(mu_);
        if (queue_.empty()) throw TransportError("scripted backend exhausted its response queue");
        entry = std::move(queue_.front());
        queue_.pop_front();
    }
    if (entry.thrower) entry.thrower();
    Completion completion;
    completion.text = std::move(entry.text);
    completion.usage.prompt_tokens = estimate_prompt_tokens(req);
    completion.usage.completion_tokens = estimate_tokens(completion.text.size());
    completion.usage.request_count = 1;
    return completion;
}

// ---------------------------------------------------------------------------
// ReplayBackend

ReplayBackend::ReplayBackend(const std::string& cassette_path) {
    std::ifstream in(cassette_path);
    if (!in) throw IoError("cannot open cassette: " + cassette_path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (strings::trim(line).empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw SchemaError(std::string("invalid cassette JSON: ") + e.what(), line_no);
        }
        if (!j.contains("digest") || !j.contains("response"))
            throw SchemaError("cassette entry missing digest/response", line_no);
        Entry entry;
        entry.response = j.at("response").get<std::string>();
        if (j.contains("usage")) {
            const json& u = j.at("usage");
            entry.usage.prompt_tokens = u.value("prompt_tokens", std::uint64_t{0});
            entry.usage.completion_tokens = u.value("completion_tokens", std::uint64_t{0});
        }
        entry.usage.request_count = 1;
        by_digest_[j.at("digest").get<std::string>()].push_back(std::move(entry));
    }
}

Completion ReplayBackend::complete(const CompletionRequest& req) {
    const std::string digest = request_digest(req);
    Entry entry;
    {
        std::lock_guard lock(mu_);
        auto it = by_digest_.find(digest);
        if (it != by_digest_.end() && !it->second.empty()) {
            entry = it->second.front();
            it->second.pop_front();
            last_served_[digest] = entry;
        } else {
            auto served = last_served_.find(digest);
            if (served == last_served_.end()) throw CassetteMissError(digest);
            entry = served->second;
        }
    }
    Completion completion;
    completion.text = entry.response;
    completion.usage = entry.usage;
    return completion;
}

// ---------------------------------------------------------------------------
// RecordBackend

RecordBackend::RecordBackend(std::unique_ptr<Backend> inner, const std::string& cassette_path)
    : inner_(std::move(inner)), path_(cassette_path) {
    std::ofstream out(path_, std::ios::trunc);
    if (!out) throw IoError("cannot open cassette for writing: " + path_);
}

RecordBackend::~RecordBackend() = default;

Completion RecordBackend::complete(const CompletionRequest& req) {
    Completion completion = inner_->complete(req);
    json entry{{"digest", request_digest(req)},
               {"request", request_to_json(req)},
               {"response", completion.text},
               {"usage",
                {{"prompt_tokens", completion.usage.prompt_tokens},
                 {"completion_tokens", completion.usage.completion_tokens}}}};
    std::lock_guard lock(mu_);
    std::ofstream out(path_, std::ios::app);
    if (!out) throw IoError("cannot append to cassette: " + path_);
    out << entry.dump() << '\n';
    return completion;
}

// ---------------------------------------------------------------------------
// HttpBackend

HttpBackend::HttpBackend(HttpOptions options) : options_(std::move(options)) {
    if (options_.base_url.empty()) throw ArgumentError("live backend requires a base URL");
}

void HttpBackend::rate_limit_wait() {
    if (options_.rate_limit_rpm <= 0) return;
    const auto interval =
        std::chrono::duration<double>(60.0 / static_cast<double>(options_.rate_limit_rpm));
    std::unique_lock lock(mu_);
    const auto now = std::chrono::steady_clock::now();
    const auto earliest = last_dispatch_ + std::chrono::duration_cast<std::chrono::steady_clock::duration>(interval);
    if (last_dispatch_.time_since_epoch().count() != 0 && now < earliest) {
        lock.unlock();
        std::this_thread::sleep_until(earliest);
        lock.lock();
    }
    last_dispatch_ = std::chrono::steady_clock::now();
}

Completion HttpBackend::complete(const CompletionRequest& req) {
    // Split "https://host[:port]" from any path prefix.
    std::string base = options_.base_url;
    while (!base.empty() && base.back() == '/') base.pop_back();
    std::string host = base, prefix;
    const std::size_t scheme = base.find("://");
    const std::size_t path_start = base.find('/', scheme == std::string::npos ? 0 : scheme + 3);
    if (path_start != std::string::npos) {
        host = base.substr(0, path_start);
        prefix = base.substr(path_start);
    }

    const std::string body = request_to_json(req).dump();
    std::mt19937_64 jitter_rng(std::random_device{}());

    double backoff = options_.initial_backoff_s;
    std::string last_error;
    for (int attempt = 1; attempt <= options_.max_attempts; ++attempt) {
        rate_limit_wait();

        httplib::Client client(host);
        client.set_connection_timeout(options_.timeout_s);
        client.set_read_timeout(options_.timeout_s);
        httplib::Headers headers{{"Authorization", "Bearer " + options_.api_key}};
        auto res = client.Post(prefix + "/chat/completions", headers, body, "application/json");

        if (!res) {
            last_error = "transport failure: " + httplib::to_string(res.error());
        } else if (res->status == 429) {
            double delay = backoff;
            if (res->has_header("Retry-After")) {
                try {
                    delay = std::stod(res->get_header_value("Retry-After"));
                } catch (...) {
                }
            }
            if (attempt == options_.max_attempts)
                throw RateLimitedError("rate limited after " + std::to_string(attempt) +
                                       " attempts", delay);
            std::this_thread::sleep_for(std::chrono::duration<double>(delay));
            continue;
        } else if (res->status >= 400) {
            std::string code;
            try {
                code = json::parse(res->body).value("error", json::object()).value("code", "");
            } catch (...) {
            }
            if (res->status == 400 &&
                (code == "context_length_exceeded" ||
                 strings::contains(res->body, "context_length_exceeded") ||
                 strings::contains(res->body, "maximum context length")))
                throw ContextWindowExceededError("model context window exceeded");
            throw TransportError("HTTP " + std::to_string(res->status) + ": " + res->body);
        } else {
            json reply;
            try {
                reply = json::parse(res->body);
            } catch (const json::exception& e) {
                throw TransportError(std::string("unparseable completion response: ") + e.what());
            }
            Completion completion;
            completion.text =
                reply.at("choices").at(0).at("message").value("content", std::string{});
            if (reply.contains("usage")) {
                completion.usage.prompt_tokens =
                    reply["usage"].value("prompt_tokens", std::uint64_t{0});
                completion.usage.completion_tokens =
                    reply["usage"].value("completion_tokens", std::uint64_t{0});
            } else {
                completion.usage.prompt_tokens = estimate_prompt_tokens(req);
                completion.usage.completion_tokens = estimate_tokens(completion.text.size());
            }
            completion.usage.request_count = 1;
            return completion;
        }

        if (attempt == options_.max_attempts) break;
        std::uniform_real_distribution<double> jitter(0.0, backoff / 2.0);
        std::this_thread::sleep_for(std::chrono::duration<double>(backoff + jitter(jitter_rng)));
        backoff *= 2.0;
    }
    throw TransportError(last_error.empty() ? "exhausted retry attempts" : last_error);
}

// ---------------------------------------------------------------------------

std::unique_ptr<Backend> make_backend(const std::string& kind, const std::string& cassette_path,
                                      const HttpOptions& http) {
    if (kind == "live") return std::make_unique<HttpBackend>(http);
    if (kind == "replay") {
        if (cassette_path.empty()) throw ArgumentError("replay backend requires --cassette");
        return std::make_unique<ReplayBackend>(cassette_path);
    }
    if (kind == "record") {
        if (cassette_path.empty()) throw ArgumentError("record backend requires --cassette");
        return std::make_unique<RecordBackend>(std::make_unique<HttpBackend>(http), cassette_path);
    }
    if (kind == "scripted") {
        if (cassette_path.empty()) throw ArgumentError("scripted backend requires --cassette");
        auto scripted = std::make_unique<ScriptedBackend>();
        std::ifstream in(cassette_path);
        if (!in) throw IoError("cannot open script file: " + cassette_path);
        std::string line;
        while (std::getline(in, line)) {
            if (strings::trim(line).empty()) continue;
            scripted->push_response(json::parse(line).at("response").get<std::string>());
        }
        return scripted;
    }
    throw ArgumentError("unknown backend '" + kind + "'");
}

} // namespace vultriad::llm
