#pragma once

#include "skillforge/jsonl.hpp"

#include <chrono>
#include <condition_variable>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace skillforge {

struct ChatMessage {
    std::string role; // "user" or "assistant"
    std::string content;
};

struct ChatRequest {
    std::string system;
    std::vector<ChatMessage> messages;
    double temperature = 1.0;
    int max_tokens = 256;
    std::string model;
};

// Whitespace-free canonical JSON with sorted keys; the fingerprint hashes it.
std::string canonical_chat_json(const ChatRequest& req);
std::string chat_fingerprint(const ChatRequest& req);

struct ScoreResponse {
    std::vector<std::string> tokens;
    std::vector<double> logprobs;
};

struct SequenceScore {
    std::string text;
    std::vector<double> token_logprobs;
    double perplexity = 0.0; // exp(-mean logprob)
};

std::string canonical_score_json(const std::string& model, const std::string& text);
std::string score_fingerprint(const std::string& model, const std::string& text);

// Recorded request/response pairs, one JSONL line per entry:
// {fingerprint, request_canonical, response, model, recorded_at}.
class Cassette {
public:
    Cassette() = default;
    static Cassette load(const std::string& path);

    bool contains(const std::string& fingerprint) const;
    const std::string& response_for(const std::string& fingerprint) const;
    void record(const std::string& fingerprint, const std::string& request_canonical,
                const std::string& response, const std::string& model);
    void save(const std::string& path) const;
    std::size_t size() const { return entries_.size(); }

    // Closest recorded fingerprint by common hex prefix, for miss diagnostics.
    std::string nearest_key(const std::string& fingerprint) const;

private:
    struct Entry {
        std::string request_canonical;
        std::string response;
        std::string model;
        std::string recorded_at;
    };
    std::map<std::string, Entry> entries_;
};

class ChatTransport {
public:
    virtual ~ChatTransport() = default;
    virtual std::string complete(const ChatRequest& req) = 0;
    virtual ScoreResponse score(const std::string& model, const std::string& text) = 0;
};

// Replay-mode transport: any use is a bug, so it throws.
class FailTransport : public ChatTransport {
public:
    std::string complete(const ChatRequest&) override;
    ScoreResponse score(const std::string&, const std::string&) override;
    int calls = 0;
};

// Deterministic scripted transport for tests and fixture generation.
class ScriptedTransport : public ChatTransport {
public:
    using ChatFn = std::function<std::string(const ChatRequest&)>;
    using ScoreFn = std::function<ScoreResponse(const std::string&, const std::string&)>;
    ScriptedTransport(ChatFn chat_fn, ScoreFn score_fn)
        : chat_fn_(std::move(chat_fn)), score_fn_(std::move(score_fn)) {}

    std::string complete(const ChatRequest& req) override { return chat_fn_(req); }
    ScoreResponse score(const std::string& model, const std::string& text) override {
        return score_fn_(model, text);
    }

private:
    ChatFn chat_fn_;
    ScoreFn score_fn_;
};

// De-facto chat-completions JSON contract:
// POST {model, messages:[{role, content}], temperature, max_tokens}.
// Scoring endpoint: POST {model, text} -> {tokens:[...], logprobs:[...]}.
class HttpChatTransport : public ChatTransport {
public:
    HttpChatTransport(std::string chat_url, std::string chat_path, std::string score_url,
                      std::string score_path, std::string api_key_env = "LLM_API_KEY");
    std::string complete(const ChatRequest& req) override;
    ScoreResponse score(const std::string& model, const std::string& text) override;

private:
    std::string chat_url_, chat_path_, score_url_, score_path_, api_key_;
};

enum class GatewayMode { live, record, replay };

GatewayMode gateway_mode_from_string(const std::string& s);
std::string to_string(GatewayMode mode);

struct RetryPolicy {
    int max_attempts = 4;                              // 1 try + 3 retries
    std::vector<double> backoff_seconds = {1, 4, 16};  // per retry
};

struct RateLimit {
    double requests_per_minute = 0; // 0 = unlimited
    int max_in_flight = 4;
};

// Shared front door for chat completion and sequence scoring with cassette
// record/replay. Thread-safe; cassette writes serialized.
class LlmGateway {
public:
    LlmGateway(GatewayMode mode, std::unique_ptr<ChatTransport> transport,
               std::string cassette_path, std::string score_model = "",
               RetryPolicy retry = {}, RateLimit limit = {});
    ~LlmGateway();

    std::string chat(const ChatRequest& req);
    SequenceScore score_sequence(const std::string& text);
    SequenceScore score_sequence(const std::string& text, const std::string& model);

    GatewayMode mode() const { return mode_; }
    void flush(); // persist cassette (record mode)

private:
    GatewayMode mode_;
    std::unique_ptr<ChatTransport> transport_;
    std::string cassette_path_;
    std::string score_model_;
    RetryPolicy retry_;
    RateLimit limit_;
    Cassette cassette_;
    mutable std::mutex mu_;
    std::condition_variable cv_;
    int in_flight_ = 0;
    std::chrono::steady_clock::time_point last_request_;
    bool dirty_ = false;

    std::string with_transport(const std::function<std::string()>& call);
    void validate(const ChatRequest& req) const;
};

SequenceScore make_sequence_score(const std::string& text, const ScoreResponse& resp);

} // namespace skillforge
