#pragma once

#include "skillforge/dataset.hpp"
#include "skillforge/llm_gateway.hpp"
#include "skillforge/matcher.hpp"
#include "skillforge/rng.hpp"
#include "skillforge/tags.hpp"
#include "skillforge/taxonomy.hpp"
#include "skillforge/vectors.hpp"

#include <array>
#include <string>
#include <vector>

namespace skillforge {

struct SpanTagParams {
    std::string model;
    double temperature = 0.45;
    int max_tokens = 512;
    int max_corrections = 2;
};

struct TagOutcome {
    std::vector<TaggedSpan> spans; // offsets into the sample text
    bool flagged = false;          // corrections exhausted
    int corrections = 0;
};

// Ask the model to rewrite the sample with @@ ## around every part related
// to `skill`. Bad delimiters and empty highlights each trigger a feedback
// message; after max_corrections failures the outcome is empty and flagged.
TagOutcome tag_spans_for_skill(const RawSample& sample, const SkillEntry& skill,
                               LlmGateway& gateway, const SpanTagParams& params);

struct SpanSkillPair {
    std::string skill_id;
    TaggedSpan span; // surface is authoritative; offsets may be zero when
                     // the span came from a rewritten reply
};

// Keep each (skill, span) pair whose span embedding is within `threshold`
// cosine of the skill's rendered entry; final labels are the skills with at
// least one surviving pair. Gold skills with none are dropped.
RefinedSample refine_labels(const RawSample& sample, const Taxonomy& t,
                            const std::vector<SpanSkillPair>& pairs, EmbeddingProvider& embedder,
                            double threshold);

// Full self-refinement for one positive sample: discover skills with the
// matcher pipeline, collect spans for the gold skills, then filter.
RefinedSample refine_sample(const RawSample& sample, MatcherContext& matcher_ctx,
                            const SpanTagParams& tag_params, EmbeddingProvider& embedder,
                            double threshold);

// Random split stratified by provenance; per-stratum sizes stay within one
// sample of fraction * N (largest remainder). Original sample order is kept.
Dataset assemble_dataset(const std::vector<RefinedSample>& samples,
                         const std::array<double, 3>& split_fracs, SeededRng& rng);

extern const std::array<std::string, 3> kSplitNames; // train, dev, test

} // namespace skillforge
