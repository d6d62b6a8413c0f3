#pragma once

#include "skillforge/dataset.hpp"
#include "skillforge/llm_gateway.hpp"
#include "skillforge/taxonomy.hpp"
#include "skillforge/vectors.hpp"

#include <string>
#include <utility>

namespace skillforge {

struct QualityReport {
    double perplexity_median = 0.0;
    double perplexity_mean = 0.0;
    double s2sim = 0.0;            // mean skill-sentence cosine
    double explicitness_pct = 0.0; // % of pairs with the name verbatim in text
    std::size_t n_samples = 0;
    std::size_t n_skill_sentence_pairs = 0;
};

// The distribution is heavy-tailed, so the median is the headline; the mean
// is reported alongside.
std::pair<double, double> perplexity_metric(const Dataset& d, LlmGateway& scorer);

// Mean cosine between each taxonomy-labeled skill's rendered entry and its
// sentence. UNK and no-skill samples contribute no pairs.
double s2sim(const Dataset& d, const Taxonomy& t, EmbeddingProvider& embedder);

// Percentage of (skill, sentence) pairs where the skill name occurs in the
// sentence, case-insensitively.
double explicitness(const Dataset& d, const Taxonomy& t);

QualityReport quality_report(const Dataset& d, const Taxonomy& t, LlmGateway& scorer,
                             EmbeddingProvider& embedder);

Json quality_report_to_json(const QualityReport& r);
std::string quality_report_table(const QualityReport& r);

} // namespace skillforge
