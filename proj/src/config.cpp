#include "skillforge/config.hpp"

#include "skillforge/common.hpp"
#include "skillforge/hashing.hpp"

#include <filesystem>

namespace skillforge {

namespace {

std::string resolve(const std::filesystem::path& base, const std::string& p) {
    if (p.empty()) return p;
    std::filesystem::path path(p);
    if (path.is_absolute()) return path.lexically_normal().string();
    return (base / path).lexically_normal().string();
}

} // namespace

std::string RunConfig::config_hash() const {
    Json semantic = raw;
    if (semantic.contains("gateway") && semantic["gateway"].is_object()) {
        semantic["gateway"].erase("mode");
    }
    semantic["master_seed"] = master_seed;
    return sha256_hex(semantic.dump());
}

RunConfig load_run_config(const std::string& path) {
    const Json j = Json::parse(read_file(path));
    const std::filesystem::path base = std::filesystem::path(path).parent_path();

    RunConfig c;
    c.raw = j;
    if (j.contains("taxonomy")) {
        const Json& t = j["taxonomy"];
        c.taxonomy.path = resolve(base, t.value("path", ""));
        const std::string delim = t.value("delimiter", ",");
        if (delim.size() != 1) throw Error("taxonomy.delimiter must be a single character");
        c.taxonomy.format.delimiter = delim[0];
        if (t.contains("columns")) {
            const Json& cols = t["columns"];
            c.taxonomy.format.id_column = cols.value("id", c.taxonomy.format.id_column);
            c.taxonomy.format.name_column = cols.value("name", c.taxonomy.format.name_column);
            c.taxonomy.format.definition_column =
                cols.value("definition", c.taxonomy.format.definition_column);
            c.taxonomy.format.alt_labels_column =
                cols.value("alt_labels", c.taxonomy.format.alt_labels_column);
            c.taxonomy.format.group_column = cols.value("group", c.taxonomy.format.group_column);
        }
        c.taxonomy.format.alt_label_separator =
            t.value("alt_label_separator", c.taxonomy.format.alt_label_separator);
        if (t.contains("selected_ids")) {
            c.taxonomy.selected_ids = t["selected_ids"].get<std::vector<std::string>>();
        }
    }
    if (j.contains("providers")) {
        const Json& p = j["providers"];
        if (p.contains("chat")) {
            c.chat.base_url = p["chat"].value("base_url", "");
            c.chat.path = p["chat"].value("path", "/v1/chat/completions");
            c.chat.model = p["chat"].value("model", "");
        }
        if (p.contains("score")) {
            c.score.base_url = p["score"].value("base_url", "");
            c.score.path = p["score"].value("path", "/score");
            c.score.model = p["score"].value("model", "");
        }
        if (p.contains("embed")) {
            c.embed.kind = p["embed"].value("kind", "hash");
            c.embed.base_url = p["embed"].value("base_url", "");
            c.embed.model = p["embed"].value("model", "");
            c.embed.dim = p["embed"].value("dim", std::size_t{32});
            c.embed.cache_path = resolve(base, p["embed"].value("cache", ""));
        }
    }
    if (j.contains("gateway")) {
        const Json& g = j["gateway"];
        c.gateway.cassette_path = resolve(base, g.value("cassette", ""));
        c.gateway.mode = g.value("mode", "replay");
        c.gateway.retries = g.value("retries", 3);
        if (g.contains("backoff_seconds")) {
            c.gateway.backoff_seconds = g["backoff_seconds"].get<std::vector<double>>();
        }
        c.gateway.requests_per_minute = g.value("requests_per_minute", 0.0);
        c.gateway.max_in_flight = g.value("max_in_flight", 4);
    }
    if (j.contains("combigen")) {
        const Json& g = j["combigen"];
        c.combigen.k = g.value("k", std::size_t{20});
        c.combigen.similarity_threshold = g.value("similarity_threshold", 0.83);
        c.combigen.n_max = g.value("n_max", std::size_t{5});
        c.combigen.softmax_temperature = g.value("softmax_temperature", 1.0);
        c.rounds = g.value("rounds", std::size_t{1});
    }
    if (j.contains("generation")) {
        const Json& g = j["generation"];
        c.generation.params.temperature = g.value("temperature", 0.7);
        c.generation.params.max_tokens_dense = g.value("max_tokens_dense", 256);
        c.generation.params.max_tokens_sparse = g.value("max_tokens_sparse", 512);
        c.generation.params.negatives_batch = g.value("negatives_batch", std::size_t{10});
        c.generation.negatives_unknown = g.value("negatives_unknown", std::size_t{500});
        c.generation.negatives_company = g.value("negatives_company", std::size_t{250});
        c.generation.negatives_perks = g.value("negatives_perks", std::size_t{250});
    }
    if (j.contains("refine")) {
        const Json& r = j["refine"];
        c.refine.threshold = r.value("threshold", 0.7);
        c.refine.tag.temperature = r.value("tag_temperature", 0.45);
        c.refine.tag.max_tokens = r.value("tag_max_tokens", 512);
        c.refine.tag.max_corrections = r.value("max_corrections", 2);
    }
    if (j.contains("matcher")) {
        const Json& m = j["matcher"];
        c.match.matcher.shots_extraction = m.value("shots_extraction", 7);
        c.match.matcher.shots_matching = m.value("shots_matching", 1);
        c.match.matcher.n_rule = m.value("n_rule", std::size_t{5});
        c.match.matcher.n_embed = m.value("n_embed", std::size_t{5});
        c.match.matcher.selection_mode = m.value("selection_mode", "hybrid");
        c.match.matcher.unk_on_nomatch = m.value("unk_on_nomatch", false);
        c.match.matcher.skip_matching = m.value("skip_matching", false);
        c.match.matcher.max_candidates = m.value("max_candidates", std::size_t{10});
        c.match.matcher.window_sentences = m.value("window_sentences", std::size_t{0});
        c.match.matcher.chat_temperature = m.value("chat_temperature", 0.0);
        c.match.matcher.max_tokens = m.value("max_tokens", 512);
        c.match.pool_split = m.value("pool_split", "train");
        c.match.target_split = m.value("target_split", "test");
    }
    if (j.contains("split")) {
        c.split_fracs = {j["split"].value("train", 0.70), j["split"].value("dev", 0.15),
                         j["split"].value("test", 0.15)};
    }
    c.master_seed = j.value("master_seed", std::uint64_t{7});

    c.generation.params.model = c.chat.model;
    c.refine.tag.model = c.chat.model;
    c.match.matcher.model = c.chat.model;
    return c;
}

void apply_overrides(RunConfig& config, const ConfigOverrides& overrides) {
    if (overrides.seed) config.master_seed = *overrides.seed;
    if (overrides.cassette) {
        config.gateway.cassette_path = *overrides.cassette;
        config.raw["gateway"]["cassette"] = *overrides.cassette;
    }
    if (overrides.mode) config.gateway.mode = *overrides.mode;
}

std::unique_ptr<LlmGateway> make_gateway(const RunConfig& config) {
    const GatewayMode mode = gateway_mode_from_string(config.gateway.mode);
    std::unique_ptr<ChatTransport> transport;
    if (mode == GatewayMode::replay) {
        transport = std::make_unique<FailTransport>();
    } else {
        transport = std::make_unique<HttpChatTransport>(config.chat.base_url, config.chat.path,
                                                        config.score.base_url, config.score.path);
    }
    RetryPolicy retry;
    retry.max_attempts = config.gateway.retries + 1;
    retry.backoff_seconds = config.gateway.backoff_seconds;
    RateLimit limit;
    limit.requests_per_minute = config.gateway.requests_per_minute;
    limit.max_in_flight = config.gateway.max_in_flight;
    return std::make_unique<LlmGateway>(mode, std::move(transport), config.gateway.cassette_path,
                                        config.score.model, retry, limit);
}

std::shared_ptr<EmbeddingProvider> make_embedder(const RunConfig& config) {
    std::shared_ptr<EmbeddingProvider> inner;
    if (config.embed.kind == "hash") {
        inner = std::make_shared<HashEmbeddingProvider>(config.embed.dim);
    } else if (config.embed.kind == "http") {
        // Replay must stay off the network: rely on the warm cache alone.
        if (config.gateway.mode == "replay") {
            if (config.embed.cache_path.empty()) {
                throw Error("replay mode with an http embedder requires a warm embedding cache");
            }
            inner = nullptr;
        } else {
            inner = std::make_shared<HttpEmbeddingProvider>(config.embed.base_url, config.embed.model);
        }
    } else {
        throw Error("unknown embed provider kind: " + config.embed.kind);
    }
    if (config.embed.cache_path.empty() && inner) return inner;
    return std::make_shared<CachingProvider>(inner, config.embed.cache_path,
                                             "embed:" + config.embed.model);
}

} // namespace skillforge
