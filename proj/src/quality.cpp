#include "skillforge/quality.hpp"

#include "skillforge/common.hpp"
#include "skillforge/text.hpp"

#include <algorithm>
#include <cstdio>
#include <vector>

namespace skillforge {

namespace {

double median_of(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n % 2 == 1) return values[n / 2];
    return (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

// All (skill id, sentence) pairs with a taxonomy label.
std::vector<std::pair<std::string, const Sample*>> label_pairs(const Dataset& d) {
    std::vector<std::pair<std::string, const Sample*>> pairs;
    for (const auto& s : d.samples) {
        for (const auto& label : s.labels) {
            if (label == kUnkLabel) continue;
            pairs.emplace_back(label, &s);
        }
    }
    return pairs;
}

} // namespace

std::pair<double, double> perplexity_metric(const Dataset& d, LlmGateway& scorer) {
    if (d.samples.empty()) throw Error("perplexity_metric: empty dataset");
    std::vector<double> ppl;
    ppl.reserve(d.samples.size());
    double sum = 0.0;
    for (const auto& s : d.samples) {
        const double p = scorer.score_sequence(s.text).perplexity;
        ppl.push_back(p);
        sum += p;
    }
    return {median_of(std::move(ppl)), sum / static_cast<double>(d.samples.size())};
}

double s2sim(const Dataset& d, const Taxonomy& t, EmbeddingProvider& embedder) {
    const auto pairs = label_pairs(d);
    if (pairs.empty()) throw Error("s2sim: no (skill, sentence) pairs");
    double sum = 0.0;
    for (const auto& [label, sample] : pairs) {
        const Vector skill_vec = embed_texts({render_entry(t.at(label))}, embedder)[0];
        const Vector text_vec = embed_texts({sample->text}, embedder)[0];
        sum += cosine(skill_vec, text_vec);
    }
    return sum / static_cast<double>(pairs.size());
}

double explicitness(const Dataset& d, const Taxonomy& t) {
    const auto pairs = label_pairs(d);
    if (pairs.empty()) return 0.0;
    std::size_t hits = 0;
    for (const auto& [label, sample] : pairs) {
        if (contains_ci(sample->text, t.at(label).name)) ++hits;
    }
    return 100.0 * static_cast<double>(hits) / static_cast<double>(pairs.size());
}

QualityReport quality_report(const Dataset& d, const Taxonomy& t, LlmGateway& scorer,
                             EmbeddingProvider& embedder) {
    QualityReport r;
    const auto [median, mean] = perplexity_metric(d, scorer);
    r.perplexity_median = median;
    r.perplexity_mean = mean;
    r.s2sim = s2sim(d, t, embedder);
    r.explicitness_pct = explicitness(d, t);
    r.n_samples = d.samples.size();
    r.n_skill_sentence_pairs = label_pairs(d).size();
    return r;
}

Json quality_report_to_json(const QualityReport& r) {
    return Json{{"perplexity_median", r.perplexity_median},
                {"perplexity_mean", r.perplexity_mean},
                {"s2sim", r.s2sim},
                {"explicitness_pct", r.explicitness_pct},
                {"n_samples", r.n_samples},
                {"n_skill_sentence_pairs", r.n_skill_sentence_pairs}};
}

std::string quality_report_table(const QualityReport& r) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "%-22s %12s %12s %8s %14s\n"
                  "%-22s %12.2f %12.2f %8.3f %13.1f%%\n",
                  "", "Ppl (median)", "Ppl (mean)", "S2SIM", "Explicitness",
                  ("n=" + std::to_string(r.n_samples)).c_str(), r.perplexity_median,
                  r.perplexity_mean, r.s2sim, r.explicitness_pct);
    return buf;
}

} // namespace skillforge
