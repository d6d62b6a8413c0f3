#include "skillforge/combigen.hpp"

#include "skillforge/common.hpp"
#include "skillforge/text.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace skillforge {

double PopularityTable::at(const std::string& id) const {
    auto it = scores.find(id);
    if (it == scores.end()) throw Error("popularity table has no score for " + id);
    return it->second;
}

bool PopularityTable::covers(const std::vector<std::string>& ids) const {
    return std::all_of(ids.begin(), ids.end(),
                       [&](const std::string& id) { return scores.count(id) > 0; });
}

const std::vector<std::string>& popularity_templates() {
    static const std::vector<std::string> templates = {
        "I want a job that involves {skill}",
        "For my job, I want to learn {skill}",
        "At my job, my main skill is {skill}",
    };
    return templates;
}

PopularityTable popularity(const Taxonomy& t, LlmGateway& scorer) {
    if (t.size() < 2) throw Error("popularity needs at least 2 skills to standardize");
    const auto ids = t.ids();
    const auto& templates = popularity_templates();

    // raw[template][skill] = negative perplexity
    std::vector<std::vector<double>> raw(templates.size(), std::vector<double>(ids.size()));
    for (std::size_t ti = 0; ti < templates.size(); ++ti) {
        for (std::size_t si = 0; si < ids.size(); ++si) {
            const std::string sentence = substitute(templates[ti], "{skill}", t.at(ids[si]).name);
            const double ppl = scorer.score_sequence(sentence).perplexity;
            if (!std::isfinite(ppl)) throw Error("non-finite perplexity for: " + sentence);
            raw[ti][si] = -ppl;
        }
    }

    PopularityTable table;
    std::vector<double> acc(ids.size(), 0.0);
    for (const auto& column : raw) {
        double mean = 0.0;
        for (double x : column) mean += x;
        mean /= static_cast<double>(column.size());
        double var = 0.0;
        for (double x : column) var += (x - mean) * (x - mean);
        var /= static_cast<double>(column.size());
        const double stdev = std::sqrt(var);
        for (std::size_t si = 0; si < ids.size(); ++si) {
            acc[si] += stdev == 0.0 ? 0.0 : (column[si] - mean) / stdev;
        }
    }
    for (std::size_t si = 0; si < ids.size(); ++si) {
        table.scores[ids[si]] = acc[si] / static_cast<double>(templates.size());
    }
    return table;
}

std::vector<std::string> neighbor_set(const std::string& seed, const VectorIndex& index,
                                      std::size_t k, double threshold) {
    if (!index.contains(seed)) throw Error("neighbor_set: seed absent from index: " + seed);
    const auto ranked = index.knn(index.vector_for(seed), k, {seed});
    std::vector<std::string> out;
    for (const auto& [id, sim] : ranked) {
        if (sim > threshold) out.push_back(id);
    }
    return out;
}

std::vector<double> selection_probs(const std::vector<std::string>& candidates,
                                    const PopularityTable& pop, double temperature) {
    if (candidates.empty()) throw Error("selection_probs: no candidates");
    if (!(temperature > 0.0)) throw Error("selection_probs: temperature must be > 0");
    std::vector<double> logits;
    logits.reserve(candidates.size());
    for (const auto& id : candidates) logits.push_back(pop.at(id) / temperature);
    const double peak = *std::max_element(logits.begin(), logits.end());
    double total = 0.0;
    std::vector<double> probs(logits.size());
    for (std::size_t i = 0; i < logits.size(); ++i) {
        probs[i] = std::exp(logits[i] - peak);
        total += probs[i];
    }
    for (double& p : probs) p /= total;
    return probs;
}

SkillCombination sample_combination(const std::string& seed, const VectorIndex& index,
                                    const PopularityTable& pop, SeededRng& rng,
                                    const CombigenParams& params) {
    SkillCombination combo;
    combo.seed = seed;
    combo.members.push_back(seed);
    combo.n_drawn = static_cast<std::size_t>(rng.uniform_int(1, params.n_max));

    std::vector<std::string> pool = neighbor_set(seed, index, params.k, params.similarity_threshold);
    const std::size_t target = std::min(combo.n_drawn, pool.size() + 1);
    while (combo.members.size() < target) {
        const auto probs = selection_probs(pool, pop, params.softmax_temperature);
        const std::size_t pick = rng.pick_weighted(probs);
        combo.members.push_back(pool[pick]);
        pool.erase(pool.begin() + static_cast<long>(pick));
    }
    return combo;
}

std::vector<SkillCombination> generate_all(const Taxonomy& t, const VectorIndex& index,
                                           const PopularityTable& pop, const CombigenParams& params,
                                           std::size_t rounds, std::uint64_t master_seed) {
    if (!pop.covers(t.ids())) throw Error("generate_all: popularity table does not cover the taxonomy");
    std::vector<SkillCombination> combos;
    combos.reserve(rounds * t.size());
    for (std::size_t round = 0; round < rounds; ++round) {
        for (const auto& [id, _] : t.entries()) {
            SeededRng rng(derive_seed(master_seed, round, id));
            combos.push_back(sample_combination(id, index, pop, rng, params));
        }
    }
    return combos;
}

Json combination_to_json(const SkillCombination& c) {
    return Json{{"seed", c.seed}, {"members", c.members}, {"n_drawn", c.n_drawn}};
}

SkillCombination combination_from_json(const Json& j) {
    SkillCombination c;
    c.seed = j.at("seed").get<std::string>();
    c.members = j.at("members").get<std::vector<std::string>>();
    c.n_drawn = j.at("n_drawn").get<std::size_t>();
    return c;
}

} // namespace skillforge
