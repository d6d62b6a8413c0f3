#include "skillforge/vectors.hpp"

#include "http_support.hpp"
#include "skillforge/common.hpp"
#include "skillforge/hashing.hpp"
#include "skillforge/jsonl.hpp"
#include "skillforge/text.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <thread>

namespace skillforge {

double cosine(const Vector& u, const Vector& v) {
    if (u.size() != v.size()) {
        throw Error("cosine: dimension mismatch (" + std::to_string(u.size()) + " vs " +
                    std::to_string(v.size()) + ")");
    }
    if (u.empty()) throw Error("cosine: empty vectors");
    double dot = 0.0, nu = 0.0, nv = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        dot += u[i] * v[i];
        nu += u[i] * u[i];
        nv += v[i] * v[i];
    }
    if (nu == 0.0 || nv == 0.0) throw Error("cosine: zero-norm vector");
    return dot / (std::sqrt(nu) * std::sqrt(nv));
}

VectorIndex::VectorIndex(std::vector<std::string> keys, std::vector<Vector> vectors)
    : keys_(std::move(keys)), vectors_(std::move(vectors)) {
    if (keys_.size() != vectors_.size()) throw Error("vector index: keys/rows mismatch");
    for (std::size_t i = 0; i < keys_.size(); ++i) {
        if (!by_key_.emplace(keys_[i], i).second) throw Error("vector index: duplicate key " + keys_[i]);
        if (!vectors_.empty() && vectors_[i].size() != vectors_[0].size()) {
            throw Error("vector index: inconsistent dimensions");
        }
        for (double x : vectors_[i]) {
            if (!std::isfinite(x)) throw Error("vector index: non-finite component in " + keys_[i]);
        }
    }
}

const Vector& VectorIndex::vector_for(const std::string& key) const {
    auto it = by_key_.find(key);
    if (it == by_key_.end()) throw Error("vector index: unknown key " + key);
    return vectors_[it->second];
}

std::vector<std::pair<std::string, double>>
VectorIndex::knn(const Vector& query, std::size_t k, const std::set<std::string>& exclude) const {
    if (k < 1) throw Error("knn: k must be >= 1");
    if (empty()) throw Error("knn: empty index");
    std::vector<std::pair<std::string, double>> scored;
    scored.reserve(keys_.size());
    for (std::size_t i = 0; i < keys_.size(); ++i) {
        if (exclude.count(keys_[i])) continue;
        scored.emplace_back(keys_[i], cosine(query, vectors_[i]));
    }
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (scored.size() > k) scored.resize(k);
    return scored;
}

std::vector<Vector> embed_texts(const std::vector<std::string>& texts, EmbeddingProvider& provider) {
    if (texts.empty()) throw Error("embed_texts: no texts");
    auto out = provider.embed(texts);
    if (out.size() != texts.size()) throw Error("embed_texts: provider returned wrong count");
    return out;
}

Vector token_span_embedding(const std::string& sentence, std::size_t start, std::size_t end,
                            EmbeddingProvider& provider) {
    if (start >= end || end > sentence.size()) throw Error("token_span_embedding: span out of range");
    const auto tokens = provider.embed_tokens(sentence);
    Vector sum;
    std::size_t n = 0;
    for (const auto& tok : tokens) {
        const bool intersects = tok.begin < end && start < tok.end;
        if (!intersects) continue;
        if (sum.empty()) sum.assign(tok.values.size(), 0.0);
        if (tok.values.size() != sum.size()) throw Error("token_span_embedding: ragged token vectors");
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += tok.values[i];
        ++n;
    }
    if (n == 0) {
        std::ostringstream msg;
        msg << "token_span_embedding: no token intersects [" << start << ", " << end << "); boundaries:";
        for (const auto& tok : tokens) msg << " [" << tok.begin << "," << tok.end << ")";
        throw Error(msg.str());
    }
    for (double& x : sum) x /= static_cast<double>(n);
    return sum;
}

Vector span_query_embedding(const std::string& sentence, const std::string& surface,
                            EmbeddingProvider& provider) {
    if (surface.empty()) throw Error("span_query_embedding: empty surface");
    const std::size_t pos = sentence.find(surface);
    if (pos != std::string::npos) {
        return token_span_embedding(sentence, pos, pos + surface.size(), provider);
    }
    return embed_texts({surface}, provider)[0];
}

// ---- CachingProvider ----

CachingProvider::CachingProvider(std::shared_ptr<EmbeddingProvider> inner, std::string cache_path,
                                 std::string provider_id)
    : inner_(std::move(inner)), cache_path_(std::move(cache_path)), provider_id_(std::move(provider_id)) {
    if (provider_id_.empty()) {
        provider_id_ = inner_ ? inner_->id() : "cache";
    }
    load();
}

CachingProvider::~CachingProvider() {
    try {
        flush();
    } catch (...) {
        // best effort; an explicit flush() surfaces errors
    }
}

std::string CachingProvider::id() const { return provider_id_; }

void CachingProvider::load() {
    if (cache_path_.empty() || !std::filesystem::exists(cache_path_)) return;
    for (const Json& rec : read_jsonl(cache_path_)) {
        if (rec.value("provider", "") != provider_id_) continue;
        const std::string key = rec.at("key").get<std::string>();
        if (rec.value("kind", "text") == "tokens") {
            std::vector<TokenEmbedding> toks;
            for (const Json& t : rec.at("tokens")) {
                TokenEmbedding te;
                te.begin = t.at("start").get<std::size_t>();
                te.end = t.at("end").get<std::size_t>();
                te.values = t.at("values").get<Vector>();
                toks.push_back(std::move(te));
            }
            token_cache_[key] = std::move(toks);
        } else {
            Vector v = rec.at("values").get<Vector>();
            if (!v.empty()) {
                if (dim_ && *dim_ != v.size()) throw Error("embedding cache: mixed dimensions in " + cache_path_);
                dim_ = v.size();
            }
            text_cache_[key] = std::move(v);
        }
    }
}

void CachingProvider::check_dim(const Vector& v) {
    if (dim_ && *dim_ != v.size()) {
        throw Error("embedding dimension mismatch with existing cache: got " + std::to_string(v.size()) +
                    ", cache has " + std::to_string(*dim_));
    }
    dim_ = v.size();
}

std::vector<Vector> CachingProvider::embed(const std::vector<std::string>& texts) {
    if (texts.empty()) throw Error("embed: no texts");
    std::vector<Vector> out(texts.size());
    std::vector<std::size_t> missing;
    {
        std::lock_guard<std::mutex> lock(mu_);
        for (std::size_t i = 0; i < texts.size(); ++i) {
            auto it = text_cache_.find(sha256_hex(texts[i]));
            if (it != text_cache_.end()) {
                out[i] = it->second;
            } else {
                missing.push_back(i);
            }
        }
    }
    if (!missing.empty()) {
        if (!inner_) {
            throw Error("embedding cache miss in cache-only mode for text: " + texts[missing[0]]);
        }
        std::vector<std::string> ask;
        for (std::size_t i : missing) ask.push_back(texts[i]);
        auto fresh = inner_->embed(ask);
        if (fresh.size() != ask.size()) throw Error("embedding provider returned wrong count");
        std::lock_guard<std::mutex> lock(mu_);
        for (std::size_t j = 0; j < missing.size(); ++j) {
            check_dim(fresh[j]);
            out[missing[j]] = fresh[j];
            text_cache_[sha256_hex(ask[j])] = std::move(fresh[j]);
        }
        dirty_ = true;
    }
    return out;
}

std::vector<TokenEmbedding> CachingProvider::embed_tokens(const std::string& sentence) {
    const std::string key = sha256_hex(sentence);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = token_cache_.find(key);
        if (it != token_cache_.end()) return it->second;
    }
    if (!inner_) throw Error("token embedding cache miss in cache-only mode for: " + sentence);
    auto toks = inner_->embed_tokens(sentence);
    std::lock_guard<std::mutex> lock(mu_);
    token_cache_[key] = toks;
    dirty_ = true;
    return toks;
}

void CachingProvider::flush() {
    std::lock_guard<std::mutex> lock(mu_);
    if (cache_path_.empty() || !dirty_) return;
    std::vector<Json> records;
    std::vector<std::string> keys;
    keys.reserve(text_cache_.size());
    for (const auto& [k, _] : text_cache_) keys.push_back(k);
    std::sort(keys.begin(), keys.end());
    for (const auto& k : keys) {
        records.push_back(Json{{"provider", provider_id_}, {"kind", "text"}, {"key", k},
                               {"values", text_cache_[k]}});
    }
    keys.clear();
    for (const auto& [k, _] : token_cache_) keys.push_back(k);
    std::sort(keys.begin(), keys.end());
    for (const auto& k : keys) {
        Json toks = Json::array();
        for (const auto& t : token_cache_[k]) {
            toks.push_back(Json{{"start", t.begin}, {"end", t.end}, {"values", t.values}});
        }
        records.push_back(Json{{"provider", provider_id_}, {"kind", "tokens"}, {"key", k}, {"tokens", toks}});
    }
    write_jsonl(cache_path_, records);
    dirty_ = false;
}

std::size_t CachingProvider::entry_count() const {
    std::lock_guard<std::mutex> lock(mu_);
    return text_cache_.size() + token_cache_.size();
}

// ---- HashEmbeddingProvider ----

Vector HashEmbeddingProvider::token_vector(const std::string& token) const {
    Vector v(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        const std::uint64_t h = splitmix64(fnv1a64(token) ^ (0x9e3779b97f4a7c15ULL * (i + 1)));
        // Map to [-1, 1); keep full 53-bit precision for determinism.
        v[i] = static_cast<double>(h >> 11) * 0x1.0p-52 - 1.0;
    }
    return v;
}

std::vector<Vector> HashEmbeddingProvider::embed(const std::vector<std::string>& texts) {
    std::vector<Vector> out;
    out.reserve(texts.size());
    for (const auto& text : texts) {
        Vector sum(dim_, 0.0);
        auto tokens = tokenize_alnum(text);
        if (tokens.empty()) tokens.push_back("");
        for (const auto& tok : tokens) {
            const Vector tv = token_vector(tok);
            for (std::size_t i = 0; i < dim_; ++i) sum[i] += tv[i];
        }
        double norm = 0.0;
        for (double x : sum) norm += x * x;
        norm = std::sqrt(norm);
        if (norm == 0.0) {
            sum[0] = 1.0;
        } else {
            for (double& x : sum) x /= norm;
        }
        out.push_back(std::move(sum));
    }
    return out;
}

std::vector<TokenEmbedding> HashEmbeddingProvider::embed_tokens(const std::string& sentence) {
    std::vector<TokenEmbedding> out;
    std::size_t i = 0;
    while (i < sentence.size()) {
        while (i < sentence.size() && !is_alnum_char(sentence[i])) ++i;
        if (i >= sentence.size()) break;
        std::size_t j = i;
        while (j < sentence.size() && is_alnum_char(sentence[j])) ++j;
        TokenEmbedding te;
        te.begin = i;
        te.end = j;
        te.values = embed({sentence.substr(i, j - i)})[0];
        out.push_back(std::move(te));
        i = j;
    }
    return out;
}

// ---- HttpEmbeddingProvider ----

HttpEmbeddingProvider::HttpEmbeddingProvider(std::string base_url, std::string model,
                                             std::string api_key_env)
    : base_url_(std::move(base_url)), model_(std::move(model)) {
    if (const char* key = std::getenv(api_key_env.c_str())) api_key_ = key;
}

std::string HttpEmbeddingProvider::id() const { return "http:" + model_; }

std::vector<Vector> HttpEmbeddingProvider::embed(const std::vector<std::string>& texts) {
    Json body{{"model", model_}, {"texts", texts}};
    const Json reply = Json::parse(post_json("/embed", body.dump()));
    std::vector<Vector> out;
    for (const Json& row : reply.at("embeddings")) out.push_back(row.get<Vector>());
    if (out.size() != texts.size()) throw Error("embedding endpoint returned wrong count");
    return out;
}

std::vector<TokenEmbedding> HttpEmbeddingProvider::embed_tokens(const std::string& sentence) {
    Json body{{"model", model_}, {"text", sentence}};
    const Json reply = Json::parse(post_json("/embed_tokens", body.dump()));
    std::vector<TokenEmbedding> out;
    for (const Json& t : reply.at("tokens")) {
        TokenEmbedding te;
        te.begin = t.at("start").get<std::size_t>();
        te.end = t.at("end").get<std::size_t>();
        te.values = t.at("vector").get<Vector>();
        out.push_back(std::move(te));
    }
    return out;
}

std::string HttpEmbeddingProvider::post_json(const std::string& path, const std::string& body) {
    // Transient endpoint failures get a short retry ladder before surfacing.
    const int attempts = 3;
    for (int attempt = 1;; ++attempt) {
        try {
            return http::post_json(base_url_, path, body, api_key_);
        } catch (const Error&) {
            if (attempt == attempts) throw;
            std::this_thread::sleep_for(std::chrono::seconds(attempt));
        }
    }
}

} // namespace skillforge
