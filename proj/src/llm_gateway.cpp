#include "skillforge/llm_gateway.hpp"

#include "http_support.hpp"
#include "skillforge/common.hpp"
#include "skillforge/hashing.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <thread>

namespace skillforge {

std::string canonical_chat_json(const ChatRequest& req) {
    Json messages = Json::array();
    for (const auto& m : req.messages) {
        messages.push_back(Json{{"role", m.role}, {"content", m.content}});
    }
    // nlohmann objects keep keys sorted; dump() emits no whitespace.
    const Json canon{{"kind", "chat"},
                     {"model", req.model},
                     {"system", req.system},
                     {"messages", messages},
                     {"temperature", req.temperature},
                     {"max_tokens", req.max_tokens}};
    return canon.dump();
}

std::string chat_fingerprint(const ChatRequest& req) {
    return sha256_hex(canonical_chat_json(req));
}

std::string canonical_score_json(const std::string& model, const std::string& text) {
    const Json canon{{"kind", "score"}, {"model", model}, {"text", text}};
    return canon.dump();
}

std::string score_fingerprint(const std::string& model, const std::string& text) {
    return sha256_hex(canonical_score_json(model, text));
}

// ---- Cassette ----

Cassette Cassette::load(const std::string& path) {
    Cassette c;
    if (!std::filesystem::exists(path)) return c;
    for (const Json& rec : read_jsonl(path)) {
        Entry e;
        e.request_canonical = rec.value("request_canonical", "");
        e.response = rec.at("response").get<std::string>();
        e.model = rec.value("model", "");
        e.recorded_at = rec.value("recorded_at", "");
        c.entries_[rec.at("fingerprint").get<std::string>()] = std::move(e);
    }
    return c;
}

bool Cassette::contains(const std::string& fingerprint) const {
    return entries_.count(fingerprint) > 0;
}

const std::string& Cassette::response_for(const std::string& fingerprint) const {
    auto it = entries_.find(fingerprint);
    if (it == entries_.end()) throw Error("cassette has no entry for " + fingerprint);
    return it->second.response;
}

void Cassette::record(const std::string& fingerprint, const std::string& request_canonical,
                      const std::string& response, const std::string& model) {
    Entry e;
    e.request_canonical = request_canonical;
    e.response = response;
    e.model = model;
    char buf[32];
    const std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    e.recorded_at = buf;
    entries_[fingerprint] = std::move(e);
}

void Cassette::save(const std::string& path) const {
    std::vector<Json> records;
    records.reserve(entries_.size());
    for (const auto& [fp, e] : entries_) {
        records.push_back(Json{{"fingerprint", fp},
                               {"request_canonical", e.request_canonical},
                               {"response", e.response},
                               {"model", e.model},
                               {"recorded_at", e.recorded_at}});
    }
    write_jsonl(path, records);
}

std::string Cassette::nearest_key(const std::string& fingerprint) const {
    std::string best;
    std::size_t best_prefix = 0;
    for (const auto& [fp, _] : entries_) {
        std::size_t p = 0;
        while (p < fp.size() && p < fingerprint.size() && fp[p] == fingerprint[p]) ++p;
        if (p >= best_prefix) {
            best_prefix = p;
            best = fp;
        }
    }
    return best;
}

// ---- transports ----

std::string FailTransport::complete(const ChatRequest&) {
    ++calls;
    throw Error("network transport used in replay mode");
}

ScoreResponse FailTransport::score(const std::string&, const std::string&) {
    ++calls;
    throw Error("network transport used in replay mode");
}

HttpChatTransport::HttpChatTransport(std::string chat_url, std::string chat_path, std::string score_url,
                                     std::string score_path, std::string api_key_env)
    : chat_url_(std::move(chat_url)),
      chat_path_(std::move(chat_path)),
      score_url_(std::move(score_url)),
      score_path_(std::move(score_path)) {
    if (const char* key = std::getenv(api_key_env.c_str())) api_key_ = key;
}

std::string HttpChatTransport::complete(const ChatRequest& req) {
    Json messages = Json::array();
    if (!req.system.empty()) {
        messages.push_back(Json{{"role", "system"}, {"content", req.system}});
    }
    for (const auto& m : req.messages) {
        messages.push_back(Json{{"role", m.role}, {"content", m.content}});
    }
    const Json body{{"model", req.model},
                    {"messages", messages},
                    {"temperature", req.temperature},
                    {"max_tokens", req.max_tokens}};
    const Json reply = Json::parse(http::post_json(chat_url_, chat_path_, body.dump(), api_key_));
    return reply.at("choices").at(0).at("message").at("content").get<std::string>();
}

ScoreResponse HttpChatTransport::score(const std::string& model, const std::string& text) {
    const Json body{{"model", model}, {"text", text}};
    const Json reply = Json::parse(http::post_json(score_url_, score_path_, body.dump(), api_key_));
    ScoreResponse out;
    out.tokens = reply.at("tokens").get<std::vector<std::string>>();
    out.logprobs = reply.at("logprobs").get<std::vector<double>>();
    return out;
}

GatewayMode gateway_mode_from_string(const std::string& s) {
    if (s == "live") return GatewayMode::live;
    if (s == "record") return GatewayMode::record;
    if (s == "replay") return GatewayMode::replay;
    throw Error("unknown gateway mode: " + s + " (expected live|record|replay)");
}

std::string to_string(GatewayMode mode) {
    switch (mode) {
        case GatewayMode::live: return "live";
        case GatewayMode::record: return "record";
        case GatewayMode::replay: return "replay";
    }
    return "?";
}

// ---- gateway ----

LlmGateway::LlmGateway(GatewayMode mode, std::unique_ptr<ChatTransport> transport,
                       std::string cassette_path, std::string score_model, RetryPolicy retry,
                       RateLimit limit)
    : mode_(mode),
      transport_(std::move(transport)),
      cassette_path_(std::move(cassette_path)),
      score_model_(std::move(score_model)),
      retry_(retry),
      limit_(limit),
      last_request_(std::chrono::steady_clock::now() - std::chrono::hours(1)) {
    if (!cassette_path_.empty()) cassette_ = Cassette::load(cassette_path_);
    if (mode_ == GatewayMode::replay && cassette_path_.empty()) {
        throw Error("replay mode requires a cassette path");
    }
}

LlmGateway::~LlmGateway() {
    try {
        flush();
    } catch (...) {
        // destructor must not throw; an explicit flush() reports errors
    }
}

void LlmGateway::flush() {
    std::lock_guard<std::mutex> lock(mu_);
    if (dirty_ && !cassette_path_.empty()) {
        cassette_.save(cassette_path_);
        dirty_ = false;
    }
}

void LlmGateway::validate(const ChatRequest& req) const {
    if (req.messages.empty()) throw Error("chat request has no messages");
    if (!std::isfinite(req.temperature) || req.temperature < 0) {
        throw Error("chat request temperature must be finite and >= 0");
    }
    if (req.max_tokens <= 0) throw Error("chat request max_tokens must be positive");
    for (std::size_t i = 1; i < req.messages.size(); ++i) {
        if (req.messages[i].role == "assistant" && req.messages[i - 1].role == "assistant") {
            throw Error("chat request has consecutive assistant turns");
        }
    }
}

std::string LlmGateway::with_transport(const std::function<std::string()>& call) {
    // Bound in-flight requests and honor the requests/minute budget.
    {
        std::unique_lock<std::mutex> lock(mu_);
        cv_.wait(lock, [&] { return in_flight_ < limit_.max_in_flight; });
        ++in_flight_;
        if (limit_.requests_per_minute > 0) {
            const auto min_gap = std::chrono::duration<double>(60.0 / limit_.requests_per_minute);
            const auto now = std::chrono::steady_clock::now();
            const auto wait_until = last_request_ + std::chrono::duration_cast<std::chrono::steady_clock::duration>(min_gap);
            if (wait_until > now) {
                lock.unlock();
                std::this_thread::sleep_until(wait_until);
                lock.lock();
            }
            last_request_ = std::chrono::steady_clock::now();
        }
    }
    std::string out;
    std::exception_ptr failure;
    for (int attempt = 0; attempt < retry_.max_attempts; ++attempt) {
        try {
            out = call();
            failure = nullptr;
            break;
        } catch (const std::exception&) {
            failure = std::current_exception();
            if (attempt + 1 < retry_.max_attempts) {
                const std::size_t slot = static_cast<std::size_t>(attempt);
                const double delay =
                    slot < retry_.backoff_seconds.size() ? retry_.backoff_seconds[slot] : 0.0;
                if (delay > 0) {
                    std::this_thread::sleep_for(std::chrono::duration<double>(delay));
                }
            }
        }
    }
    {
        std::lock_guard<std::mutex> lock(mu_);
        --in_flight_;
    }
    cv_.notify_one();
    if (failure) std::rethrow_exception(failure);
    return out;
}

std::string LlmGateway::chat(const ChatRequest& req) {
    validate(req);
    const std::string canonical = canonical_chat_json(req);
    const std::string fp = sha256_hex(canonical);

    if (mode_ == GatewayMode::replay) {
        std::lock_guard<std::mutex> lock(mu_);
        if (!cassette_.contains(fp)) {
            throw Error("replay miss for fingerprint " + fp + "; nearest cassette key: " +
                        cassette_.nearest_key(fp) + "; request: " + canonical);
        }
        return cassette_.response_for(fp);
    }
    if (mode_ == GatewayMode::record) {
        std::lock_guard<std::mutex> lock(mu_);
        if (cassette_.contains(fp)) return cassette_.response_for(fp);
    }

    const std::string response = with_transport([&] { return transport_->complete(req); });

    if (mode_ == GatewayMode::record) {
        std::lock_guard<std::mutex> lock(mu_);
        cassette_.record(fp, canonical, response, req.model);
        dirty_ = true;
    }
    return response;
}

SequenceScore make_sequence_score(const std::string& text, const ScoreResponse& resp) {
    if (resp.logprobs.empty()) throw Error("scoring returned empty tokenization for: " + text);
    double sum = 0.0;
    for (double lp : resp.logprobs) sum += lp;
    SequenceScore score;
    score.text = text;
    score.token_logprobs = resp.logprobs;
    score.perplexity = std::exp(-sum / static_cast<double>(resp.logprobs.size()));
    return score;
}

SequenceScore LlmGateway::score_sequence(const std::string& text) {
    return score_sequence(text, score_model_);
}

SequenceScore LlmGateway::score_sequence(const std::string& text, const std::string& model) {
    if (text.empty()) throw Error("score_sequence: empty text");
    const std::string canonical = canonical_score_json(model, text);
    const std::string fp = sha256_hex(canonical);

    auto parse = [&](const std::string& body) {
        const Json j = Json::parse(body);
        ScoreResponse resp;
        resp.tokens = j.at("tokens").get<std::vector<std::string>>();
        resp.logprobs = j.at("logprobs").get<std::vector<double>>();
        return make_sequence_score(text, resp);
    };

    if (mode_ == GatewayMode::replay) {
        std::lock_guard<std::mutex> lock(mu_);
        if (!cassette_.contains(fp)) {
            throw Error("replay miss for fingerprint " + fp + "; nearest cassette key: " +
                        cassette_.nearest_key(fp) + "; request: " + canonical);
        }
        return parse(cassette_.response_for(fp));
    }
    if (mode_ == GatewayMode::record) {
        std::lock_guard<std::mutex> lock(mu_);
        if (cassette_.contains(fp)) return parse(cassette_.response_for(fp));
    }

    const std::string body = with_transport([&] {
        const ScoreResponse resp = transport_->score(model, text);
        return Json{{"tokens", resp.tokens}, {"logprobs", resp.logprobs}}.dump();
    });

    if (mode_ == GatewayMode::record) {
        std::lock_guard<std::mutex> lock(mu_);
        cassette_.record(fp, canonical, body, model);
        dirty_ = true;
    }
    return parse(body);
}

} // namespace skillforge
