#include "skillforge/eval.hpp"

#include "skillforge/common.hpp"
#include "skillforge/text.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

namespace skillforge {

PredRecord pred_record_from_json(const Json& j) {
    PredRecord r;
    r.id = j.at("id").get<std::string>();
    r.predicted = labels_from_wire(j.at("predicted").get<std::vector<std::string>>());
    return r;
}

namespace {

F1Report f1_from_counts(std::size_t tp, std::size_t fp, std::size_t fn, std::size_t n_samples) {
    F1Report r;
    r.tp = tp;
    r.fp = fp;
    r.fn = fn;
    r.n_samples = n_samples;
    r.precision = tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
    r.recall = tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
    r.f1 = r.precision + r.recall == 0.0
               ? 0.0
               : 2.0 * r.precision * r.recall / (r.precision + r.recall);
    return r;
}

F1Report micro_f1_over(const std::vector<PredRecord>& preds,
                       const std::vector<const Sample*>& gold_samples) {
    std::map<std::string, std::set<std::string>> pred_by_id;
    std::set<std::string> gold_ids;
    for (const Sample* s : gold_samples) gold_ids.insert(s->id);
    for (const auto& p : preds) {
        if (!gold_ids.count(p.id)) continue; // stratified callers pass the full file
        auto [it, fresh] = pred_by_id.emplace(p.id, std::set<std::string>());
        if (!fresh) throw Error("micro_f1: multiple prediction records for sample " + p.id);
        it->second.insert(p.predicted.begin(), p.predicted.end());
    }

    std::size_t tp = 0, fp = 0, fn = 0;
    for (const Sample* s : gold_samples) {
        const std::set<std::string> gold(s->labels.begin(), s->labels.end());
        std::set<std::string> pred;
        auto it = pred_by_id.find(s->id);
        if (it != pred_by_id.end()) pred = it->second;
        for (const auto& label : pred) {
            if (gold.count(label)) {
                ++tp;
            } else {
                ++fp;
            }
        }
        for (const auto& label : gold) {
            if (!pred.count(label)) ++fn;
        }
    }
    return f1_from_counts(tp, fp, fn, gold_samples.size());
}

} // namespace

F1Report micro_f1(const std::vector<PredRecord>& preds, const Dataset& gold) {
    std::set<std::string> gold_ids;
    for (const auto& s : gold.samples) gold_ids.insert(s.id);
    for (const auto& p : preds) {
        if (!gold_ids.count(p.id)) throw Error("micro_f1: prediction for unknown sample id " + p.id);
    }
    std::vector<const Sample*> all;
    all.reserve(gold.samples.size());
    for (const auto& s : gold.samples) all.push_back(&s);
    return micro_f1_over(preds, all);
}

double token_jaccard(const std::string& a, const std::string& b) {
    const auto ta = tokenize_alnum(a);
    const auto tb = tokenize_alnum(b);
    const std::set<std::string> sa(ta.begin(), ta.end());
    const std::set<std::string> sb(tb.begin(), tb.end());
    std::vector<std::string> in_both;
    std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(in_both));
    const std::size_t uni = sa.size() + sb.size() - in_both.size();
    if (uni == 0) return 1.0;
    return static_cast<double>(in_both.size()) / static_cast<double>(uni);
}

SpanEvalReport span_eval(
    const std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>>& per_sample) {
    SpanEvalReport report;
    std::size_t exact = 0, contained = 0;
    double jaccard_sum = 0.0;

    for (const auto& [pred_spans, gold_spans] : per_sample) {
        report.n_gold += gold_spans.size();
        for (const auto& pred : pred_spans) {
            ++report.n_pred;
            double best = 0.0;
            const std::string* best_gold = nullptr;
            for (const auto& gold : gold_spans) {
                const double jac = token_jaccard(pred, gold);
                if (best_gold == nullptr || jac > best) {
                    best = jac;
                    best_gold = &gold;
                }
            }
            if (best_gold == nullptr) continue; // no gold spans: jaccard 0
            jaccard_sum += best;

            const auto tp = tokenize_alnum(pred);
            const auto tg = tokenize_alnum(*best_gold);
            const std::set<std::string> sp(tp.begin(), tp.end());
            const std::set<std::string> sg(tg.begin(), tg.end());
            if (sp == sg) {
                ++exact;
                ++contained;
            } else if (std::includes(sp.begin(), sp.end(), sg.begin(), sg.end())) {
                ++contained;
            }
        }
    }

    if (report.n_pred > 0) {
        report.exact_pct = 100.0 * static_cast<double>(exact) / static_cast<double>(report.n_pred);
        report.containment_pct =
            100.0 * static_cast<double>(contained) / static_cast<double>(report.n_pred);
        report.mean_jaccard = jaccard_sum / static_cast<double>(report.n_pred);
    }
    return report;
}

std::map<std::string, SplitStats> dataset_stats(const Dataset& d) {
    struct Acc {
        std::size_t n = 0;
        std::size_t label_instances = 0;
        std::size_t unk_instances = 0;
        std::size_t words = 0;
    };
    std::map<std::string, Acc> accs;
    auto feed = [](Acc& a, const Sample& s) {
        ++a.n;
        a.label_instances += s.labels.size();
        for (const auto& l : s.labels) {
            if (l == kUnkLabel) ++a.unk_instances;
        }
        a.words += split_whitespace(s.text).size();
    };
    for (const auto& s : d.samples) {
        feed(accs[s.split], s);
        feed(accs["overall"], s);
    }

    std::map<std::string, SplitStats> out;
    for (const auto& [split, a] : accs) {
        SplitStats st;
        st.n_samples = a.n;
        st.avg_skills = a.n == 0 ? 0.0
                                 : static_cast<double>(a.label_instances) / static_cast<double>(a.n);
        st.pct_unk = a.label_instances == 0 ? 0.0
                                            : 100.0 * static_cast<double>(a.unk_instances) /
                                                  static_cast<double>(a.label_instances);
        st.avg_words =
            a.n == 0 ? 0.0 : static_cast<double>(a.words) / static_cast<double>(a.n);
        out[split] = st;
    }
    return out;
}

StratifiedReport length_stratified_eval(const std::vector<PredRecord>& preds, const Dataset& gold,
                                        std::size_t word_threshold) {
    std::vector<const Sample*> short_side, long_side;
    for (const auto& s : gold.samples) {
        if (split_whitespace(s.text).size() < word_threshold) {
            short_side.push_back(&s);
        } else {
            long_side.push_back(&s);
        }
    }
    StratifiedReport report;
    if (!short_side.empty()) report.short_side = micro_f1_over(preds, short_side);
    if (!long_side.empty()) report.long_side = micro_f1_over(preds, long_side);
    return report;
}

Json f1_to_json(const F1Report& r) {
    return Json{{"precision", r.precision}, {"recall", r.recall}, {"f1", r.f1},
                {"tp", r.tp},               {"fp", r.fp},         {"fn", r.fn},
                {"n_samples", r.n_samples}};
}

Json span_eval_to_json(const SpanEvalReport& r) {
    return Json{{"exact_pct", r.exact_pct},
                {"containment_pct", r.containment_pct},
                {"mean_jaccard", r.mean_jaccard},
                {"n_pred", r.n_pred},
                {"n_gold", r.n_gold}};
}

Json stats_to_json(const std::map<std::string, SplitStats>& stats) {
    Json out = Json::object();
    for (const auto& [split, st] : stats) {
        const std::string key = split.empty() ? "unsplit" : split;
        out[key] = Json{{"n_samples", st.n_samples},
                        {"avg_skills", st.avg_skills},
                        {"pct_unk", st.pct_unk},
                        {"avg_words", st.avg_words}};
    }
    return out;
}

std::string stats_table(const std::map<std::string, SplitStats>& stats) {
    std::string out;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-10s %12s %10s %12s %10s\n", "Split", "Avg #Skills", "%UNK",
                  "Avg #Words", "#Samples");
    out += buf;
    for (const auto& [split, st] : stats) {
        std::snprintf(buf, sizeof buf, "%-10s %12.2f %10.1f %12.1f %10zu\n",
                      split.empty() ? "unsplit" : split.c_str(), st.avg_skills, st.pct_unk,
                      st.avg_words, st.n_samples);
        out += buf;
    }
    return out;
}

std::string f1_table(const F1Report& r) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "Precision %.4f  Recall %.4f  F1 %.4f  (tp=%zu fp=%zu fn=%zu over %zu samples)\n",
                  r.precision, r.recall, r.f1, r.tp, r.fp, r.fn, r.n_samples);
    return buf;
}

} // namespace skillforge
