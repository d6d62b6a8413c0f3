#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace skillforge {

using Vector = std::vector<double>;

struct TokenEmbedding {
    std::size_t begin = 0; // character extent, half-open
    std::size_t end = 0;
    Vector values;
};

class EmbeddingProvider {
public:
    virtual ~EmbeddingProvider() = default;
    virtual std::string id() const = 0;
    virtual std::vector<Vector> embed(const std::vector<std::string>& texts) = 0;
    // Per-token vectors with character extents for one sentence.
    virtual std::vector<TokenEmbedding> embed_tokens(const std::string& sentence) = 0;
};

double cosine(const Vector& u, const Vector& v);

// Immutable once built: ordered keys aligned with vector rows.
class VectorIndex {
public:
    VectorIndex() = default;
    VectorIndex(std::vector<std::string> keys, std::vector<Vector> vectors);

    std::size_t size() const { return keys_.size(); }
    bool empty() const { return keys_.empty(); }
    bool contains(const std::string& key) const { return by_key_.count(key) > 0; }
    const Vector& vector_for(const std::string& key) const;
    const std::vector<std::string>& keys() const { return keys_; }

    // Top-min(k, remaining) keys by descending cosine; ties broken by
    // ascending key; `exclude` filtered out before ranking.
    std::vector<std::pair<std::string, double>>
    knn(const Vector& query, std::size_t k, const std::set<std::string>& exclude = {}) const;

private:
    std::vector<std::string> keys_;
    std::vector<Vector> vectors_;
    std::unordered_map<std::string, std::size_t> by_key_;
};

std::vector<Vector> embed_texts(const std::vector<std::string>& texts, EmbeddingProvider& provider);

// Mean of the token vectors whose character extents intersect [start, end).
Vector token_span_embedding(const std::string& sentence, std::size_t start, std::size_t end,
                            EmbeddingProvider& provider);

// Query vector for a span surface: token average over its occurrence in the
// sentence when present, otherwise the embedding of the surface text itself.
Vector span_query_embedding(const std::string& sentence, const std::string& surface,
                            EmbeddingProvider& provider);

// Persistent cache keyed by (provider id, content hash). JSONL on disk.
class CachingProvider : public EmbeddingProvider {
public:
    // `inner` may be null: cache-only mode, misses raise.
    CachingProvider(std::shared_ptr<EmbeddingProvider> inner, std::string cache_path,
                    std::string provider_id = "");
    ~CachingProvider() override;

    std::string id() const override;
    std::vector<Vector> embed(const std::vector<std::string>& texts) override;
    std::vector<TokenEmbedding> embed_tokens(const std::string& sentence) override;

    void flush(); // rewrite the cache file
    std::size_t entry_count() const;

private:
    std::shared_ptr<EmbeddingProvider> inner_;
    std::string cache_path_;
    std::string provider_id_;
    mutable std::mutex mu_;
    std::unordered_map<std::string, Vector> text_cache_;
    std::unordered_map<std::string, std::vector<TokenEmbedding>> token_cache_;
    std::optional<std::size_t> dim_;
    bool dirty_ = false;

    void load();
    void check_dim(const Vector& v);
};

// Deterministic offline embedder: bag of hashed token directions, L2
// normalized. A span's token average equals the embedding of the span text
// whenever the token sets coincide.
class HashEmbeddingProvider : public EmbeddingProvider {
public:
    explicit HashEmbeddingProvider(std::size_t dim = 32) : dim_(dim) {}
    std::string id() const override { return "hash-" + std::to_string(dim_); }
    std::vector<Vector> embed(const std::vector<std::string>& texts) override;
    std::vector<TokenEmbedding> embed_tokens(const std::string& sentence) override;

private:
    std::size_t dim_;
    Vector token_vector(const std::string& token) const;
};

// HTTP provider. POST {model, texts:[...]} -> {embeddings:[[...]]} and
// POST {model, text} -> {tokens:[{start,end,vector:[...]}]}.
class HttpEmbeddingProvider : public EmbeddingProvider {
public:
    HttpEmbeddingProvider(std::string base_url, std::string model, std::string api_key_env = "EMBED_API_KEY");
    std::string id() const override;
    std::vector<Vector> embed(const std::vector<std::string>& texts) override;
    std::vector<TokenEmbedding> embed_tokens(const std::string& sentence) override;

private:
    std::string base_url_;
    std::string model_;
    std::string api_key_;
    std::string post_json(const std::string& path, const std::string& body);
};

} // namespace skillforge
