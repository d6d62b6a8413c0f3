#pragma once

#include "skillforge/llm_gateway.hpp"
#include "skillforge/rng.hpp"
#include "skillforge/taxonomy.hpp"
#include "skillforge/vectors.hpp"

#include <map>
#include <string>
#include <vector>

namespace skillforge {

// Per-skill popularity: average of standardized negative perplexities over
// the probe-sentence templates.
struct PopularityTable {
    std::map<std::string, double> scores;

    double at(const std::string& id) const;
    bool covers(const std::vector<std::string>& ids) const;
};

struct SkillCombination {
    std::string seed;
    std::vector<std::string> members; // seed first, then draw order
    std::size_t n_drawn = 0;          // the n sampled from the size distribution
    std::size_t size() const { return members.size(); }
};

struct CombigenParams {
    std::size_t k = 20;        // nearest neighbors inspected
    double similarity_threshold = 0.83;
    std::size_t n_max = 5;     // combination size upper bound (uniform draw)
    double softmax_temperature = 1.0;
};

// Probe sentences scored to estimate how common a skill is in job ads.
extern const std::vector<std::string>& popularity_templates();

// For every skill: render each template with the skill name, score it,
// negate the perplexity, z-standardize per template across skills, then
// average the standardized values. A constant column standardizes to zeros.
PopularityTable popularity(const Taxonomy& t, LlmGateway& scorer);

// Neighbors of `seed` within the top-k whose cosine similarity is strictly
// above the threshold; the seed itself is excluded. May be empty.
std::vector<std::string> neighbor_set(const std::string& seed, const VectorIndex& index,
                                      std::size_t k, double threshold);

// Softmax over popularity scores at the given temperature; sums to 1.
std::vector<double> selection_probs(const std::vector<std::string>& candidates,
                                    const PopularityTable& pop, double temperature);

// Draw n ~ U{1..n_max}; pick min(n, |neighbors|+1) members including the
// seed, sampling neighbors without replacement by popularity softmax.
SkillCombination sample_combination(const std::string& seed, const VectorIndex& index,
                                    const PopularityTable& pop, SeededRng& rng,
                                    const CombigenParams& params);

// One combination per (round, skill); every skill seeds exactly `rounds`
// combinations. Deterministic under a fixed master seed via per-seed
// substreams.
std::vector<SkillCombination> generate_all(const Taxonomy& t, const VectorIndex& index,
                                           const PopularityTable& pop, const CombigenParams& params,
                                           std::size_t rounds, std::uint64_t master_seed);

Json combination_to_json(const SkillCombination& c);
SkillCombination combination_from_json(const Json& j);

} // namespace skillforge
