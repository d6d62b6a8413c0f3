#pragma once

#include "skillforge/dataset.hpp"
#include "skillforge/llm_gateway.hpp"
#include "skillforge/prompts.hpp"
#include "skillforge/rng.hpp"
#include "skillforge/tags.hpp"
#include "skillforge/taxonomy.hpp"
#include "skillforge/vectors.hpp"

#include <string>
#include <vector>

namespace skillforge {

struct Candidate {
    std::string skill_id;
    std::string rendered; // render_entry(skill)
    std::string source;   // "rule" | "embedding"
    double score = 0.0;   // fuzz score (0..100) or cosine similarity
};

// Letter-addressed options for one extracted span.
struct CandidateSet {
    TaggedSpan span;
    std::vector<Candidate> candidates;

    char letter(std::size_t i) const { return static_cast<char>('A' + i); }
};

struct MatchDecision {
    TaggedSpan span;
    std::vector<std::string> chosen; // subset of the candidate ids; empty = no match
    bool flagged = false;            // reply was wholly unparseable
};

struct MatcherConfig {
    int shots_extraction = 7;
    int shots_matching = 1;
    std::size_t n_rule = 5;
    std::size_t n_embed = 5;
    std::string selection_mode = "hybrid"; // rule | embedding | hybrid
    bool unk_on_nomatch = false;
    bool skip_matching = false; // take the top rule candidate, no LLM rerank
    std::size_t max_candidates = 10;
    std::size_t window_sentences = 0; // sentences per extraction window; 0 = whole text
    std::string model;
    double chat_temperature = 0.0;
    int max_tokens = 512;
};

struct MatcherContext {
    const Taxonomy& taxonomy;
    const VectorIndex& taxonomy_index; // over render_entry texts, keyed by id
    EmbeddingProvider& embedder;
    LlmGateway& gateway;
    MatcherConfig config;
    SeededRng rng;
    const Dataset* demo_pool = nullptr; // optional kNN demonstration source
};

// The k pool samples nearest the sentence by embedding cosine, most similar
// first; ties broken by ascending sample id. k = 0 yields the empty list.
std::vector<Sample> retrieve_demonstrations(const std::string& sentence, const Dataset& pool,
                                            std::size_t k, EmbeddingProvider& embedder);

// Tagging prompt + demonstrations; spans index the reply's own de-tagged
// text (the model may rewrite). One correction round on bad delimiters.
std::vector<TaggedSpan> extract_skills(const std::string& sentence,
                                       const std::vector<prompts::Demonstration>& demos,
                                       LlmGateway& gateway, const MatcherConfig& config);

// Stage 1: case-insensitive containment of the span text in entry names or
// definitions (rng-sampled down to n on overflow). Stage 2 on zero hits:
// top n by token_set_ratio against the rendered entries, ties by id.
std::vector<Candidate> candidates_rule_based(const std::string& span_text, const Taxonomy& t,
                                             std::size_t n, SeededRng& rng);

// Top n rendered entries by cosine against the span's contextual embedding.
std::vector<Candidate> candidates_embedding(const TaggedSpan& span, const std::string& sentence,
                                            const Taxonomy& t, const VectorIndex& index,
                                            EmbeddingProvider& embedder, std::size_t n);

// Union with embedding results first; duplicates dropped by skill id.
CandidateSet candidates_hybrid(const TaggedSpan& span, const std::string& sentence,
                               MatcherContext& ctx);

// Full candidate selection honoring config.selection_mode.
CandidateSet select_candidates(const TaggedSpan& span, const std::string& sentence,
                               MatcherContext& ctx);

// One matching prompt; the reply's option letters become chosen skill ids.
MatchDecision match_skill(const std::string& sentence, const CandidateSet& cset,
                          const std::vector<std::string>& demo_blocks, LlmGateway& gateway,
                          const MatcherConfig& config);

// Option letters in a reply: case-insensitive, separators and trailing
// punctuation tolerated, letters beyond the candidate count ignored.
// `parseable` is false when nothing was usable and no no-match phrasing
// was present.
struct LetterParse {
    std::vector<std::size_t> indices;
    bool parseable = true;
};
LetterParse parse_option_letters(const std::string& reply, std::size_t n_candidates);

struct PipelineInput {
    std::string id;
    std::string text;
};

// Sentence windows for long inputs: runs of `sentences_per_window` sentences
// (boundaries at ./!/? followed by whitespace). Zero keeps the whole text as
// one window.
std::vector<std::string> text_windows(const std::string& text, std::size_t sentences_per_window);

struct SpanPrediction {
    TaggedSpan span;
    std::vector<std::string> chosen;
    bool flagged = false;
};

struct PredictionRecord {
    std::string id;
    std::vector<std::string> predicted; // sorted unique labels
    std::vector<SpanPrediction> spans;
    std::vector<std::string> errors;
};

// Extraction, candidate selection, and matching over every input; failures
// are recorded per sample and the run continues.
std::vector<PredictionRecord> run_pipeline(const std::vector<PipelineInput>& inputs,
                                           MatcherContext& ctx);

Json prediction_to_json(const PredictionRecord& p);
PredictionRecord prediction_from_json(const Json& j);

} // namespace skillforge
