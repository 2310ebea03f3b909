// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace vultriad {

/// Base class for all engine errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(what) {}
};

/// Malformed record or file; carries a 1-based line number when known.
class SchemaError : public Error {
public:
    SchemaError(const std::string& what, std::optional<std::size_t> line = std::nullopt)
        : Error(line ? what + " (line " + std::to_string(*line) + ")" : what), line_(line) {}
    std::optional<std::size_t> line() const { return line_; }

private:
    std::optional<std::size_t> line_;
};

/// A structurally valid record that violates a domain invariant.
class InvariantError : public Error {
public:
    explicit InvariantError(const std::string& what) : Error(what) {}
};

class ArgumentError : public Error {
public:
    explicit ArgumentError(const std::string& what) : Error(what) {}
};

class MissingContextError : public Error {
public:
    explicit MissingContextError(const std::string& pair_id)
        : Error("no context entry resolves for pair '" + pair_id + "'"), pair_id_(pair_id) {}
    const std::string& pair_id() const { return pair_id_; }

private:
    std::string pair_id_;
};

/// Lookup of a function name absent from a context store. Tool dispatch
/// renders this as an observation string instead of failing the pipeline.
class UnknownFunctionError : public Error {
public:
    explicit UnknownFunctionError(const std::string& name)
        : Error("function '" + name + "' not found in this project"), name_(name) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

/// Network-level failure; retryable with backoff.
class TransportError : public Error {
public:
    explicit TransportError(const std::string& what) : Error(what) {}
};

/// HTTP 429; retryable after the server-provided delay hint, if any.
class RateLimitedError : public Error {
public:
    explicit RateLimitedError(const std::string& what, std::optional<double> delay_hint_s = std::nullopt)
        : Error(what), delay_hint_s_(delay_hint_s) {}
    std::optional<double> delay_hint_s() const { return delay_hint_s_; }

private:
    std::optional<double> delay_hint_s_;
};

/// Non-retryable: the request no longer fits the model context window.
/// Surfaced to the orchestrator, which compacts conversation history.
class ContextWindowExceededError : public Error {
public:
    explicit ContextWindowExceededError(const std::string& what) : Error(what) {}
};

/// Replay backend received a request with no matching cassette entry.
class CassetteMissError : public Error {
public:
    explicit CassetteMissError(const std::string& digest)
        : Error("no cassette entry for request digest " + digest), digest_(digest) {}
    const std::string& digest() const { return digest_; }

private:
    std::string digest_;
};

class MissingBindingError : public Error {
public:
    explicit MissingBindingError(const std::string& name)
        : Error("unbound prompt placeholder '" + name + "'"), name_(name) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

class PairSetMismatchError : public Error {
public:
    explicit PairSetMismatchError(const std::string& what) : Error(what) {}
};

/// Raised by the usage meter when a configured request/cost budget is hit.
class BudgetExhaustedError : public Error {
public:
    explicit BudgetExhaustedError(const std::string& what) : Error(what) {}
};

} // namespace vultriad
