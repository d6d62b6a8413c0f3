#pragma once

#include "skillforge/combigen.hpp"
#include "skillforge/dataset.hpp"
#include "skillforge/llm_gateway.hpp"
#include "skillforge/rng.hpp"
#include "skillforge/taxonomy.hpp"
#include "skillforge/vectors.hpp"

#include <string>
#include <vector>

namespace skillforge {

struct GenerationParams {
    std::string model;
    double temperature = 0.7;
    int max_tokens_dense = 256;
    int max_tokens_sparse = 512;
    std::size_t negatives_batch = 10; // nExamples per no-skill call
};

// Synonyms of the combination members that must not appear in the text:
// every alternative label of every member (these collide with the taxonomy
// whenever they name another entry). Sorted and deduped.
std::vector<std::string> words_to_avoid(const SkillCombination& c, const Taxonomy& t);

// Dense combinations (<= 4 skills) ask for exactly one sentence; larger ones
// ask for a multi-sentence paragraph.
ChatRequest build_positive_prompt(const SkillCombination& c, const Taxonomy& t,
                                  const GenerationParams& params);

RawSample generate_sample(const SkillCombination& c, const Taxonomy& t, LlmGateway& gateway,
                          const GenerationParams& params, const std::string& sample_id);

enum class NoSkillKind { company, perks };

// Negative samples about the company or the salary/perks; every output is
// labeled as containing no skill.
std::vector<RawSample> generate_negatives_noskill(NoSkillKind kind, std::size_t count,
                                                  LlmGateway& gateway, const GenerationParams& params,
                                                  const std::string& id_prefix,
                                                  std::size_t id_start);

// Negative samples whose skills exist outside the selected taxonomy: the
// full combination+generation pathway over complement(universe, selected),
// every output labeled UNK.
struct UnknownNegativeInputs {
    const Taxonomy& universe;
    const Taxonomy& selected;
    const VectorIndex& universe_index;  // covers at least the complement
    const PopularityTable& universe_pop;
    CombigenParams combigen;
};

std::vector<RawSample> generate_negatives_unknown(const UnknownNegativeInputs& in, std::size_t count,
                                                  LlmGateway& gateway, const GenerationParams& params,
                                                  std::uint64_t master_seed,
                                                  const std::string& id_prefix,
                                                  std::size_t id_start);

} // namespace skillforge
