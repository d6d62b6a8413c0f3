#include "skillforge/refinery.hpp"

#include "skillforge/common.hpp"
#include "skillforge/prompts.hpp"
#include "skillforge/text.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace skillforge {

const std::array<std::string, 3> kSplitNames = {"train", "dev", "test"};

TagOutcome tag_spans_for_skill(const RawSample& sample, const SkillEntry& skill,
                               LlmGateway& gateway, const SpanTagParams& params) {
    ChatRequest req;
    req.system = prompts::kSpanTagSystem;
    req.messages.push_back({"user", prompts::kSpanTagInstruction + "\n\nSkill: " +
                                        render_entry(skill) + "\nSentence: " + sample.text +
                                        "\nAnswer: "});
    req.temperature = params.temperature;
    req.max_tokens = params.max_tokens;
    req.model = params.model;

    TagOutcome outcome;
    for (int attempt = 0; attempt <= params.max_corrections; ++attempt) {
        const std::string reply = gateway.chat(req);
        const TagParse parsed = try_parse_tags(reply, sample.text);
        if (parsed.status == TagParseStatus::ok && !parsed.spans.empty()) {
            outcome.spans = parsed.spans;
            return outcome;
        }
        if (attempt == params.max_corrections) break;
        // Pick the feedback matching the failure and ask again.
        const std::string& feedback = (parsed.status == TagParseStatus::ok && parsed.spans.empty())
                                          ? prompts::kCorrectionNothingHighlighted
                                          : prompts::kCorrectionBadDelimiters;
        req.messages.push_back({"assistant", reply});
        req.messages.push_back({"user", feedback});
        ++outcome.corrections;
    }
    outcome.flagged = true;
    outcome.spans.clear();
    return outcome;
}

namespace {

// Same-skill overlapping spans collapse to the widest one.
std::vector<TaggedSpan> dedupe_spans(std::vector<TaggedSpan> spans) {
    std::stable_sort(spans.begin(), spans.end(), [](const TaggedSpan& a, const TaggedSpan& b) {
        if (a.label != b.label) return a.label < b.label;
        const auto wa = a.end - a.start;
        const auto wb = b.end - b.start;
        if (wa != wb) return wa > wb;
        return a.start < b.start;
    });
    std::vector<TaggedSpan> kept;
    for (const TaggedSpan& sp : spans) {
        const bool covered = std::any_of(kept.begin(), kept.end(), [&](const TaggedSpan& k) {
            return k.label == sp.label && k.start < sp.end && sp.start < k.end;
        });
        if (!covered) kept.push_back(sp);
    }
    std::sort(kept.begin(), kept.end(), [](const TaggedSpan& a, const TaggedSpan& b) {
        if (a.start != b.start) return a.start < b.start;
        if (a.end != b.end) return a.end < b.end;
        return a.label < b.label;
    });
    return kept;
}

} // namespace

RefinedSample refine_labels(const RawSample& sample, const Taxonomy& t,
                            const std::vector<SpanSkillPair>& pairs, EmbeddingProvider& embedder,
                            double threshold) {
    if (!is_positive(sample.provenance)) {
        throw Error("refine_labels: sample " + sample.id + " is not a positive sample");
    }

    RefinedSample refined;
    refined.base = sample;

    std::set<std::string> kept_labels;
    std::vector<TaggedSpan> kept_spans;
    for (const SpanSkillPair& pair : pairs) {
        if (pair.skill_id == kUnkLabel || pair.span.surface.empty()) continue;
        const Vector skill_vec = embed_texts({render_entry(t.at(pair.skill_id))}, embedder)[0];
        const Vector span_vec = span_query_embedding(sample.text, pair.span.surface, embedder);
        if (cosine(span_vec, skill_vec) < threshold) continue;

        kept_labels.insert(pair.skill_id);
        // Store the span only when it maps into the sample text.
        auto hit = find_flexible(sample.text, pair.span.surface, 0);
        if (hit) {
            TaggedSpan sp;
            sp.start = hit->first;
            sp.end = hit->second;
            sp.surface = sample.text.substr(sp.start, sp.end - sp.start);
            sp.label = pair.skill_id;
            kept_spans.push_back(std::move(sp));
        }
    }

    refined.final_labels.assign(kept_labels.begin(), kept_labels.end());
    refined.spans = dedupe_spans(std::move(kept_spans));
    return refined;
}

RefinedSample refine_sample(const RawSample& sample, MatcherContext& matcher_ctx,
                            const SpanTagParams& tag_params, EmbeddingProvider& embedder,
                            double threshold) {
    std::vector<SpanSkillPair> pairs;
    bool flagged = false;

    // Feedback annotation: spans for every gold skill.
    for (const auto& gold_id : sample.gold_labels) {
        if (gold_id == kUnkLabel) continue;
        const TagOutcome outcome =
            tag_spans_for_skill(sample, matcher_ctx.taxonomy.at(gold_id), matcher_ctx.gateway,
                                tag_params);
        flagged = flagged || outcome.flagged;
        for (const auto& span : outcome.spans) pairs.push_back({gold_id, span});
    }

    // Discovery: the extraction-and-matching pipeline may find skills the
    // generator slipped in beyond the gold list.
    const auto records = run_pipeline({{sample.id, sample.text}}, matcher_ctx);
    for (const auto& rec : records) {
        for (const auto& err : rec.errors) {
            (void)err;
            flagged = true;
        }
        for (const auto& sp : rec.spans) {
            for (const auto& chosen : sp.chosen) {
                if (chosen != kUnkLabel) pairs.push_back({chosen, sp.span});
            }
        }
    }

    RefinedSample refined = refine_labels(sample, matcher_ctx.taxonomy, pairs, embedder, threshold);
    refined.flagged = flagged;
    return refined;
}

Dataset assemble_dataset(const std::vector<RefinedSample>& samples,
                         const std::array<double, 3>& split_fracs, SeededRng& rng) {
    if (samples.empty()) throw Error("assemble_dataset: no samples");
    const double total = split_fracs[0] + split_fracs[1] + split_fracs[2];
    if (std::abs(total - 1.0) > 1e-9) throw Error("assemble_dataset: split fractions must sum to 1");

    // Stratify by provenance; indexes within a stratum are shuffled, then cut
    // by largest remainder so each split stays within +-1 of fraction * N.
    std::map<std::string, std::vector<std::size_t>> strata;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        strata[to_string(samples[i].base.provenance)].push_back(i);
    }

    std::vector<std::string> assignment(samples.size());
    for (auto& [_, idxs] : strata) {
        rng.shuffle(idxs);
        const std::size_t n = idxs.size();
        std::array<std::size_t, 3> counts{};
        std::array<std::pair<double, std::size_t>, 3> remainders{};
        std::size_t assigned = 0;
        for (std::size_t s = 0; s < 3; ++s) {
            const double exact = split_fracs[s] * static_cast<double>(n);
            counts[s] = static_cast<std::size_t>(std::floor(exact));
            remainders[s] = {exact - std::floor(exact), s};
            assigned += counts[s];
        }
        std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first > b.first;
            return a.second < b.second;
        });
        for (std::size_t extra = 0; extra < n - assigned; ++extra) {
            counts[remainders[extra % 3].second] += 1;
        }
        std::size_t cursor = 0;
        for (std::size_t s = 0; s < 3; ++s) {
            for (std::size_t j = 0; j < counts[s]; ++j) {
                assignment[idxs[cursor++]] = kSplitNames[s];
            }
        }
    }

    Dataset dataset;
    dataset.samples.reserve(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        Sample s = sample_from_refined(samples[i]);
        s.split = assignment[i];
        dataset.samples.push_back(std::move(s));
    }
    return dataset;
}

} // namespace skillforge
