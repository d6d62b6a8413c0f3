#include "skillforge/matcher.hpp"

#include "skillforge/common.hpp"
#include "skillforge/fuzz.hpp"
#include "skillforge/text.hpp"

#include <algorithm>
#include <set>

namespace skillforge {

namespace {

std::string demo_block(const prompts::Demonstration& d) {
    return "Sentence: " + d.sentence + "\nAnswer: " + d.answer;
}

std::string extraction_user_message(const std::string& sentence,
                                    const std::vector<prompts::Demonstration>& demos) {
    std::string msg = prompts::kExtractionInstruction;
    for (const auto& d : demos) msg += "\n\n" + demo_block(d);
    msg += "\n\nSentence: " + sentence + "\nAnswer: ";
    return msg;
}

} // namespace

std::vector<Sample> retrieve_demonstrations(const std::string& sentence, const Dataset& pool,
                                            std::size_t k, EmbeddingProvider& embedder) {
    if (k == 0 || pool.samples.empty()) return {};
    const Vector query = embed_texts({sentence}, embedder)[0];

    std::vector<std::pair<double, const Sample*>> scored;
    scored.reserve(pool.samples.size());
    for (const auto& s : pool.samples) {
        const Vector v = embed_texts({s.text}, embedder)[0];
        scored.emplace_back(cosine(query, v), &s);
    }
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second->id < b.second->id;
    });
    if (scored.size() > k) scored.resize(k);

    std::vector<Sample> out;
    out.reserve(scored.size());
    for (const auto& [_, s] : scored) out.push_back(*s);
    return out;
}

std::vector<TaggedSpan> extract_skills(const std::string& sentence,
                                       const std::vector<prompts::Demonstration>& demos,
                                       LlmGateway& gateway, const MatcherConfig& config) {
    ChatRequest req;
    req.system = prompts::kExtractionSystem;
    req.messages.push_back({"user", extraction_user_message(sentence, demos)});
    req.temperature = config.chat_temperature;
    req.max_tokens = config.max_tokens;
    req.model = config.model;

    std::string reply = gateway.chat(req);
    TagParse parsed = try_parse_tags(reply);
    if (parsed.status == TagParseStatus::unbalanced) {
        // One correction round, then give up with no spans.
        req.messages.push_back({"assistant", reply});
        req.messages.push_back({"user", prompts::kCorrectionBadDelimiters});
        reply = gateway.chat(req);
        parsed = try_parse_tags(reply);
        if (parsed.status != TagParseStatus::ok) return {};
    }
    return parsed.spans;
}

std::vector<Candidate> candidates_rule_based(const std::string& span_text, const Taxonomy& t,
                                             std::size_t n, SeededRng& rng) {
    if (span_text.empty()) throw Error("candidates_rule_based: empty span text");

    std::vector<Candidate> hits;
    for (const auto& [id, e] : t.entries()) {
        if (contains_ci(e.name, span_text) || contains_ci(e.definition, span_text)) {
            hits.push_back({id, render_entry(e), "rule", 100.0});
        }
    }
    if (!hits.empty()) {
        if (hits.size() > n) {
            std::vector<Candidate> sampled;
            std::vector<std::size_t> pool(hits.size());
            for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
            for (std::size_t draw = 0; draw < n; ++draw) {
                const std::size_t j =
                    static_cast<std::size_t>(rng.uniform_int(0, pool.size() - 1));
                sampled.push_back(hits[pool[j]]);
                pool.erase(pool.begin() + static_cast<long>(j));
            }
            return sampled;
        }
        return hits;
    }

    // Fallback: fuzzy score against the rendered entries.
    std::vector<Candidate> scored;
    for (const auto& [id, e] : t.entries()) {
        const std::string rendered = render_entry(e);
        scored.push_back({id, rendered, "rule",
                          static_cast<double>(token_set_ratio(span_text, rendered))});
    }
    std::sort(scored.begin(), scored.end(), [](const Candidate& a, const Candidate& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.skill_id < b.skill_id;
    });
    if (scored.size() > n) scored.resize(n);
    return scored;
}

std::vector<Candidate> candidates_embedding(const TaggedSpan& span, const std::string& sentence,
                                            const Taxonomy& t, const VectorIndex& index,
                                            EmbeddingProvider& embedder, std::size_t n) {
    const Vector query = span_query_embedding(sentence, span.surface, embedder);
    const auto ranked = index.knn(query, n);
    std::vector<Candidate> out;
    out.reserve(ranked.size());
    for (const auto& [id, sim] : ranked) {
        out.push_back({id, render_entry(t.at(id)), "embedding", sim});
    }
    return out;
}

CandidateSet candidates_hybrid(const TaggedSpan& span, const std::string& sentence,
                               MatcherContext& ctx) {
    CandidateSet cset;
    cset.span = span;
    std::set<std::string> seen;
    for (const Candidate& c : candidates_embedding(span, sentence, ctx.taxonomy, ctx.taxonomy_index,
                                                   ctx.embedder, ctx.config.n_embed)) {
        if (seen.insert(c.skill_id).second) cset.candidates.push_back(c);
    }
    for (const Candidate& c :
         candidates_rule_based(span.surface, ctx.taxonomy, ctx.config.n_rule, ctx.rng)) {
        if (seen.insert(c.skill_id).second) cset.candidates.push_back(c);
    }
    return cset;
}

CandidateSet select_candidates(const TaggedSpan& span, const std::string& sentence,
                               MatcherContext& ctx) {
    CandidateSet cset;
    cset.span = span;
    if (ctx.config.selection_mode == "rule") {
        cset.candidates = candidates_rule_based(span.surface, ctx.taxonomy, ctx.config.n_rule, ctx.rng);
    } else if (ctx.config.selection_mode == "embedding") {
        cset.candidates = candidates_embedding(span, sentence, ctx.taxonomy, ctx.taxonomy_index,
                                               ctx.embedder, ctx.config.n_embed);
    } else if (ctx.config.selection_mode == "hybrid") {
        cset = candidates_hybrid(span, sentence, ctx);
    } else {
        throw Error("unknown selection_mode: " + ctx.config.selection_mode);
    }
    if (cset.candidates.size() > ctx.config.max_candidates) {
        cset.candidates.resize(ctx.config.max_candidates);
    }
    return cset;
}

LetterParse parse_option_letters(const std::string& reply, std::size_t n_candidates) {
    // Parse after the final "answer" marker when one exists.
    std::string scan = to_lower(reply);
    const std::size_t marker = scan.rfind("answer");
    if (marker != std::string::npos) scan = scan.substr(marker + 6);

    LetterParse out;
    std::set<std::size_t> seen;
    std::string token;
    auto take = [&]() {
        if (token.size() == 1 && token[0] >= 'a' && token[0] <= 'z') {
            const std::size_t idx = static_cast<std::size_t>(token[0] - 'a');
            if (idx < n_candidates && seen.insert(idx).second) out.indices.push_back(idx);
        }
        token.clear();
    };
    for (char c : scan) {
        if (is_alnum_char(c)) {
            token.push_back(c);
        } else {
            take();
        }
    }
    take();

    if (out.indices.empty()) {
        const bool no_match_phrase = scan.find("none") != std::string::npos ||
                                     scan.find("no match") != std::string::npos ||
                                     scan.find("no option") != std::string::npos;
        out.parseable = no_match_phrase;
    }
    return out;
}

MatchDecision match_skill(const std::string& sentence, const CandidateSet& cset,
                          const std::vector<std::string>& demo_blocks, LlmGateway& gateway,
                          const MatcherConfig& config) {
    if (cset.candidates.empty()) throw Error("match_skill: empty candidate set");

    std::string msg = prompts::kMatchingInstruction;
    for (const auto& block : demo_blocks) msg += "\n\n" + block;
    msg += "\n\nSentence: " + sentence + "\nSkills: " + cset.span.surface + "\n";
    for (std::size_t i = 0; i < cset.candidates.size(); ++i) {
        msg += std::string(1, cset.letter(i)) + ": " + cset.candidates[i].rendered + "\n";
    }
    msg += "Answer: ";

    ChatRequest req;
    req.system = prompts::kMatchingSystem;
    req.messages.push_back({"user", msg});
    req.temperature = config.chat_temperature;
    req.max_tokens = config.max_tokens;
    req.model = config.model;

    const std::string reply = gateway.chat(req);
    const LetterParse parsed = parse_option_letters(reply, cset.candidates.size());

    MatchDecision decision;
    decision.span = cset.span;
    decision.flagged = !parsed.parseable;
    for (std::size_t idx : parsed.indices) decision.chosen.push_back(cset.candidates[idx].skill_id);
    return decision;
}

namespace {

std::vector<prompts::Demonstration> extraction_demos(const std::string& sentence,
                                                     MatcherContext& ctx) {
    const std::size_t k = ctx.config.shots_extraction < 0
                              ? 0
                              : static_cast<std::size_t>(ctx.config.shots_extraction);
    if (k > 0 && ctx.demo_pool && !ctx.demo_pool->samples.empty()) {
        // Retrieved order is most-similar-first; prompts want most similar last.
        auto retrieved = retrieve_demonstrations(sentence, *ctx.demo_pool, k, ctx.embedder);
        std::vector<prompts::Demonstration> demos;
        for (auto it = retrieved.rbegin(); it != retrieved.rend(); ++it) {
            demos.push_back({it->text, render_tagged(it->text, it->spans)});
        }
        return demos;
    }
    return prompts::fixed_extraction_demos();
}

// Demonstration blocks for the matching prompt. One shot uses the fixed
// demo; more shots are retrieved from the pool and rendered with the same
// candidate selection the query will see.
std::vector<std::string> matching_demo_blocks(const std::string& sentence, MatcherContext& ctx) {
    const int shots = ctx.config.shots_matching;
    if (shots <= 0) return {};
    if (shots == 1 || !ctx.demo_pool || ctx.demo_pool->samples.empty()) {
        return {prompts::kFixedMatchingDemo};
    }

    std::vector<std::string> blocks;
    const auto retrieved = retrieve_demonstrations(sentence, *ctx.demo_pool,
                                                   static_cast<std::size_t>(shots) * 3, ctx.embedder);
    for (auto it = retrieved.rbegin(); it != retrieved.rend(); ++it) {
        if (blocks.size() >= static_cast<std::size_t>(shots)) break;
        const Sample& s = *it;
        const TaggedSpan* labeled = nullptr;
        for (const auto& sp : s.spans) {
            if (!sp.label.empty() && sp.label != kUnkLabel) {
                labeled = &sp;
                break;
            }
        }
        if (!labeled) continue;
        CandidateSet cset = select_candidates(*labeled, s.text, ctx);
        // The gold label must appear among the options.
        bool present = false;
        for (const auto& c : cset.candidates) present = present || c.skill_id == labeled->label;
        if (!present) {
            const Candidate gold{labeled->label, render_entry(ctx.taxonomy.at(labeled->label)),
                                 "rule", 100.0};
            if (cset.candidates.size() >= ctx.config.max_candidates && !cset.candidates.empty()) {
                cset.candidates.back() = gold;
            } else {
                cset.candidates.push_back(gold);
            }
        }
        std::string block = "Sentence: " + s.text + "\nSkills: " + labeled->surface + "\n";
        char answer = 'a';
        for (std::size_t i = 0; i < cset.candidates.size(); ++i) {
            block += std::string(1, cset.letter(i)) + ": " + cset.candidates[i].rendered + "\n";
            if (cset.candidates[i].skill_id == labeled->label) {
                answer = static_cast<char>('a' + i);
            }
        }
        block += "Answer: " + std::string(1, answer) + ".";
        blocks.push_back(std::move(block));
    }
    if (blocks.empty()) blocks.push_back(prompts::kFixedMatchingDemo);
    return blocks;
}

} // namespace

std::vector<std::string> text_windows(const std::string& text, std::size_t sentences_per_window) {
    if (sentences_per_window == 0) return {text};
    std::vector<std::string> sentences;
    std::size_t start = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const bool boundary = (text[i] == '.' || text[i] == '!' || text[i] == '?') &&
                              (i + 1 == text.size() || is_space_char(text[i + 1]));
        if (boundary) {
            const std::string piece = trim(text.substr(start, i + 1 - start));
            if (!piece.empty()) sentences.push_back(piece);
            start = i + 1;
        }
    }
    const std::string tail = trim(text.substr(start));
    if (!tail.empty()) sentences.push_back(tail);
    if (sentences.empty()) return {text};

    std::vector<std::string> windows;
    for (std::size_t i = 0; i < sentences.size(); i += sentences_per_window) {
        std::string window = sentences[i];
        for (std::size_t j = i + 1; j < std::min(i + sentences_per_window, sentences.size()); ++j) {
            window += " " + sentences[j];
        }
        windows.push_back(std::move(window));
    }
    return windows;
}

std::vector<PredictionRecord> run_pipeline(const std::vector<PipelineInput>& inputs,
                                           MatcherContext& ctx) {
    std::vector<PredictionRecord> records;
    records.reserve(inputs.size());
    for (const auto& input : inputs) {
        PredictionRecord rec;
        rec.id = input.id;
        try {
            std::set<std::string> predicted;
            for (const std::string& window : text_windows(input.text, ctx.config.window_sentences)) {
                const auto demos = extraction_demos(window, ctx);
                const auto spans = extract_skills(window, demos, ctx.gateway, ctx.config);
                for (const auto& span : spans) {
                    SpanPrediction sp;
                    sp.span = span;
                    if (ctx.config.skip_matching) {
                        const auto top = candidates_rule_based(span.surface, ctx.taxonomy,
                                                               ctx.config.n_rule, ctx.rng);
                        if (!top.empty()) sp.chosen.push_back(top.front().skill_id);
                    } else {
                        const CandidateSet cset = select_candidates(span, window, ctx);
                        if (!cset.candidates.empty()) {
                            const auto demo_blocks = matching_demo_blocks(window, ctx);
                            MatchDecision decision =
                                match_skill(window, cset, demo_blocks, ctx.gateway, ctx.config);
                            sp.chosen = decision.chosen;
                            sp.flagged = decision.flagged;
                        }
                    }
                    if (sp.chosen.empty() && ctx.config.unk_on_nomatch) {
                        sp.chosen.push_back(kUnkLabel);
                    }
                    predicted.insert(sp.chosen.begin(), sp.chosen.end());
                    rec.spans.push_back(std::move(sp));
                }
            }
            rec.predicted.assign(predicted.begin(), predicted.end());
        } catch (const std::exception& e) {
            rec.errors.push_back(e.what());
        }
        records.push_back(std::move(rec));
    }
    std::sort(records.begin(), records.end(),
              [](const PredictionRecord& a, const PredictionRecord& b) { return a.id < b.id; });
    return records;
}

Json prediction_to_json(const PredictionRecord& p) {
    Json spans = Json::array();
    for (const auto& sp : p.spans) {
        spans.push_back(Json{{"start", sp.span.start},
                             {"end", sp.span.end},
                             {"surface", sp.span.surface},
                             {"chosen", sp.chosen},
                             {"flagged", sp.flagged}});
    }
    return Json{{"id", p.id}, {"predicted", p.predicted}, {"spans", spans}, {"errors", p.errors}};
}

PredictionRecord prediction_from_json(const Json& j) {
    PredictionRecord p;
    p.id = j.at("id").get<std::string>();
    p.predicted = j.at("predicted").get<std::vector<std::string>>();
    if (j.contains("spans")) {
        for (const Json& sj : j.at("spans")) {
            SpanPrediction sp;
            sp.span.start = sj.at("start").get<std::size_t>();
            sp.span.end = sj.at("end").get<std::size_t>();
            sp.span.surface = sj.value("surface", "");
            sp.chosen = sj.at("chosen").get<std::vector<std::string>>();
            sp.flagged = sj.value("flagged", false);
            p.spans.push_back(std::move(sp));
        }
    }
    if (j.contains("errors")) p.errors = j.at("errors").get<std::vector<std::string>>();
    return p;
}

} // namespace skillforge
