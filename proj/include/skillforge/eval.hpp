#pragma once

#include "skillforge/dataset.hpp"
#include "skillforge/jsonl.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace skillforge {

// Interchange record for predictions from any system.
struct PredRecord {
    std::string id;
    std::vector<std::string> predicted; // taxonomy ids / UNK; empty = none
};

PredRecord pred_record_from_json(const Json& j);

struct F1Report {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::size_t tp = 0, fp = 0, fn = 0;
    std::size_t n_samples = 0;
};

// Pooled (sample, label) micro-average. UNK is an ordinary label; a no-skill
// gold sample contributes no gold pairs. Missing prediction records count as
// empty predictions; records for unknown sample ids are an error.
F1Report micro_f1(const std::vector<PredRecord>& preds, const Dataset& gold);

struct SpanEvalReport {
    double exact_pct = 0.0;       // best-aligned gold has the identical token set
    double containment_pct = 0.0; // exact, or gold tokens subset of predicted
    double mean_jaccard = 0.0;    // mean best token-Jaccard over predicted spans
    std::size_t n_pred = 0;
    std::size_t n_gold = 0;
};

// Greedy alignment of each predicted span to the gold span of maximal
// token-Jaccard (lowercased, non-alphanumeric tokenization). One entry per
// sample: (predicted surfaces, gold surfaces).
SpanEvalReport span_eval(
    const std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>>& per_sample);

double token_jaccard(const std::string& a, const std::string& b);

struct SplitStats {
    std::size_t n_samples = 0;
    double avg_skills = 0.0; // mean label count; no-skill samples count 0
    double pct_unk = 0.0;    // % of label instances equal to UNK
    double avg_words = 0.0;  // mean whitespace-token count
};

// Keyed by split name; "" groups samples without a split tag. The "overall"
// key aggregates everything.
std::map<std::string, SplitStats> dataset_stats(const Dataset& d);

struct StratifiedReport {
    std::optional<F1Report> short_side; // word count < threshold
    std::optional<F1Report> long_side;  // word count >= threshold
};

StratifiedReport length_stratified_eval(const std::vector<PredRecord>& preds, const Dataset& gold,
                                        std::size_t word_threshold = 12);

Json f1_to_json(const F1Report& r);
Json span_eval_to_json(const SpanEvalReport& r);
Json stats_to_json(const std::map<std::string, SplitStats>& stats);
std::string stats_table(const std::map<std::string, SplitStats>& stats);
std::string f1_table(const F1Report& r);

} // namespace skillforge
