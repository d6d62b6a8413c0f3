#pragma once

#include "skillforge/combigen.hpp"
#include "skillforge/generator.hpp"
#include "skillforge/jsonl.hpp"
#include "skillforge/llm_gateway.hpp"
#include "skillforge/matcher.hpp"
#include "skillforge/refinery.hpp"
#include "skillforge/taxonomy.hpp"

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace skillforge {

struct ProviderEndpoint {
    std::string base_url;
    std::string path;
    std::string model;
};

struct EmbedProviderConfig {
    std::string kind = "hash"; // hash | http
    std::string base_url;
    std::string model;
    std::size_t dim = 32;      // hash provider dimensionality
    std::string cache_path;    // empty = no persistent cache
};

struct GatewayConfig {
    std::string cassette_path;
    std::string mode = "replay"; // live | record | replay
    int retries = 3;
    std::vector<double> backoff_seconds = {1, 4, 16};
    double requests_per_minute = 0;
    int max_in_flight = 4;
};

struct TaxonomyConfig {
    std::string path;
    TableFormat format;
    std::vector<std::string> selected_ids; // empty = whole file
};

struct GenerationConfig {
    GenerationParams params;
    std::size_t negatives_unknown = 500;
    std::size_t negatives_company = 250;
    std::size_t negatives_perks = 250;
};

struct RefineConfig {
    double threshold = 0.7;
    SpanTagParams tag;
};

struct MatchStageConfig {
    MatcherConfig matcher;
    std::string pool_split = "train";
    std::string target_split = "test";
};

struct RunConfig {
    TaxonomyConfig taxonomy;
    ProviderEndpoint chat;
    ProviderEndpoint score;
    EmbedProviderConfig embed;
    GatewayConfig gateway;
    CombigenParams combigen;
    std::size_t rounds = 1;
    GenerationConfig generation;
    RefineConfig refine;
    MatchStageConfig match;
    std::array<double, 3> split_fracs = {0.70, 0.15, 0.15};
    std::uint64_t master_seed = 7;

    // The configuration as written (paths unresolved), so the hash is
    // machine independent. The gateway mode is operational, not semantic:
    // a record run and its replay share one hash.
    Json raw = Json::object();
    std::string config_hash() const;
};

// Relative paths inside the file resolve against the file's directory.
RunConfig load_run_config(const std::string& path);

// CLI overrides applied after loading.
struct ConfigOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::string> cassette;
    std::optional<std::string> mode;
};
void apply_overrides(RunConfig& config, const ConfigOverrides& overrides);

std::unique_ptr<LlmGateway> make_gateway(const RunConfig& config);
std::shared_ptr<EmbeddingProvider> make_embedder(const RunConfig& config);

} // namespace skillforge
