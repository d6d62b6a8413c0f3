#include "skillforge/generator.hpp"

#include "skillforge/common.hpp"
#include "skillforge/prompts.hpp"
#include "skillforge/text.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

namespace skillforge {

namespace {

constexpr std::size_t kDenseLimit = 4;

std::string format_sample_id(const std::string& prefix, std::size_t n) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%05zu", n);
    return prefix + buf;
}

} // namespace

std::vector<std::string> words_to_avoid(const SkillCombination& c, const Taxonomy& t) {
    std::set<std::string> avoid;
    for (const auto& id : c.members) {
        const SkillEntry& e = t.at(id);
        avoid.insert(e.alt_labels.begin(), e.alt_labels.end());
    }
    return {avoid.begin(), avoid.end()};
}

ChatRequest build_positive_prompt(const SkillCombination& c, const Taxonomy& t,
                                  const GenerationParams& params) {
    if (c.members.empty()) throw Error("build_positive_prompt: empty combination");
    std::vector<std::string> rendered;
    for (const auto& id : c.members) rendered.push_back(render_entry(t.at(id)));

    const bool dense = c.members.size() <= kDenseLimit;
    std::string instruction = dense ? prompts::kPositiveInstructionDense
                                    : prompts::kPositiveInstructionSparse;
    instruction = substitute(instruction, "{skillList}", join(rendered, "; "));
    instruction = substitute(instruction, "{wordsToAvoid}", join(words_to_avoid(c, t), ", "));

    ChatRequest req;
    req.system = prompts::kPositiveSystem;
    req.messages.push_back({"user", instruction});
    req.temperature = params.temperature;
    req.max_tokens = dense ? params.max_tokens_dense : params.max_tokens_sparse;
    req.model = params.model;
    return req;
}

RawSample generate_sample(const SkillCombination& c, const Taxonomy& t, LlmGateway& gateway,
                          const GenerationParams& params, const std::string& sample_id) {
    const ChatRequest req = build_positive_prompt(c, t, params);
    std::string text = trim(gateway.chat(req));
    if (text.empty()) {
        text = trim(gateway.chat(req)); // one retry on an empty reply
        if (text.empty()) throw Error("generation returned empty text for seed " + c.seed);
    }
    RawSample sample;
    sample.id = sample_id;
    sample.text = text;
    sample.gold_labels = c.members;
    sample.provenance = c.members.size() <= kDenseLimit ? Provenance::dense : Provenance::sparse;
    sample.source_combination = c;
    sample.check_invariants();
    return sample;
}

std::vector<RawSample> generate_negatives_noskill(NoSkillKind kind, std::size_t count,
                                                  LlmGateway& gateway, const GenerationParams& params,
                                                  const std::string& id_prefix,
                                                  std::size_t id_start) {
    std::vector<RawSample> out;
    if (count == 0) return out;

    const std::string& system = kind == NoSkillKind::company ? prompts::kCompanySystem
                                                             : prompts::kPerksSystem;
    const std::string& tmpl = kind == NoSkillKind::company ? prompts::kCompanyInstruction
                                                           : prompts::kPerksInstruction;
    const Provenance prov = kind == NoSkillKind::company ? Provenance::negative_company
                                                         : Provenance::negative_perks;

    std::size_t batch_index = 0;
    while (out.size() < count) {
        ChatRequest req;
        req.system = system;
        std::string instruction =
            substitute(tmpl, "{nExamples}", std::to_string(params.negatives_batch));
        // Distinct batches must have distinct fingerprints or record/replay
        // would collapse them into one response.
        if (batch_index > 0) instruction += "\nBatch " + std::to_string(batch_index + 1) + ".";
        req.messages.push_back({"user", instruction});
        req.temperature = params.temperature;
        req.max_tokens = params.max_tokens_sparse;
        req.model = params.model;

        std::vector<std::string> items = split_enumerated(gateway.chat(req));
        if (items.empty()) {
            items = split_enumerated(gateway.chat(req)); // one retry
            if (items.empty()) throw Error("no-skill negative generation returned nothing splittable");
        }
        for (const auto& text : items) {
            if (out.size() >= count) break;
            RawSample sample;
            sample.id = format_sample_id(id_prefix, id_start + out.size());
            sample.text = text;
            sample.provenance = prov;
            sample.check_invariants();
            out.push_back(std::move(sample));
        }
        ++batch_index;
    }
    return out;
}

std::vector<RawSample> generate_negatives_unknown(const UnknownNegativeInputs& in, std::size_t count,
                                                  LlmGateway& gateway, const GenerationParams& params,
                                                  std::uint64_t master_seed,
                                                  const std::string& id_prefix,
                                                  std::size_t id_start) {
    std::vector<RawSample> out;
    if (count == 0) return out;

    const Taxonomy outside = complement(in.universe, in.selected);
    if (outside.empty()) throw Error("generate_negatives_unknown: complement is empty");

    // Combinations draw from the complement only, so restrict the index.
    std::vector<std::string> keys;
    std::vector<Vector> rows;
    for (const auto& [id, _] : outside.entries()) {
        keys.push_back(id);
        rows.push_back(in.universe_index.vector_for(id));
    }
    const VectorIndex outside_index(std::move(keys), std::move(rows));

    // Same pathway as the positives, seeded round-robin over the complement.
    std::size_t round = 0;
    while (out.size() < count) {
        for (const auto& [id, _] : outside.entries()) {
            if (out.size() >= count) break;
            SeededRng rng(derive_seed(master_seed, 0x10000 + round, id));
            const SkillCombination combo =
                sample_combination(id, outside_index, in.universe_pop, rng, in.combigen);
            const std::string sample_id = format_sample_id(id_prefix, id_start + out.size());
            RawSample sample = generate_sample(combo, in.universe, gateway, params, sample_id);
            sample.gold_labels = {kUnkLabel};
            sample.provenance = Provenance::negative_unknown;
            sample.check_invariants();
            out.push_back(std::move(sample));
        }
        ++round;
    }
    return out;
}

} // namespace skillforge
