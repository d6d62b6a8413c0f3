#include "doctest.h"

#include "skillforge/common.hpp"
#include "skillforge/eval.hpp"

#include <algorithm>
#include <cctype>
#include <set>

using namespace skillforge;

namespace {

Sample make_sample(const std::string& id, const std::string& text,
                   std::vector<std::string> labels, const std::string& split = "") {
    Sample s;
    s.id = id;
    s.text = text;
    s.labels = std::move(labels);
    s.split = split;
    return s;
}

} // namespace

TEST_CASE("micro f1: perfect predictions") {
    Dataset gold;
    gold.samples.push_back(make_sample("a", "w1 w2", {"x", "y"}));
    gold.samples.push_back(make_sample("b", "w1", {kUnkLabel}));
    const std::vector<PredRecord> preds = {{"a", {"x", "y"}}, {"b", {kUnkLabel}}};
    const F1Report r = micro_f1(preds, gold);
    CHECK(r.precision == doctest::Approx(1.0));
    CHECK(r.recall == doctest::Approx(1.0));
    CHECK(r.f1 == doctest::Approx(1.0));
}

TEST_CASE("micro f1: half right on one sample") {
    Dataset gold;
    gold.samples.push_back(make_sample("a", "text", {"a_label", "b_label"}));
    const std::vector<PredRecord> preds = {{"a", {"a_label", "c_label"}}};
    const F1Report r = micro_f1(preds, gold);
    CHECK(r.tp == 1);
    CHECK(r.fp == 1);
    CHECK(r.fn == 1);
    CHECK(r.precision == doctest::Approx(0.5));
    CHECK(r.recall == doctest::Approx(0.5));
    CHECK(r.f1 == doctest::Approx(0.5));
}

TEST_CASE("micro f1: hand-tallied mixed fixture") {
    // Hand tally:
    //   s1 gold {x, y}   pred {x}       -> tp 1, fn 1
    //   s2 gold {z}      pred {z, w}    -> tp 1, fp 1
    //   s3 gold {}       pred {q}       -> fp 1        (no-skill sample)
    //   s4 gold {UNK}    pred {}        -> fn 1        (missing record)
    //   s5 gold {x}      pred {x}       -> tp 1
    // totals: tp 3, fp 2, fn 2 -> P 0.6, R 0.6, F1 0.6
    Dataset gold;
    gold.samples.push_back(make_sample("s1", "t", {"x", "y"}));
    gold.samples.push_back(make_sample("s2", "t", {"z"}));
    gold.samples.push_back(make_sample("s3", "t", {}));
    gold.samples.push_back(make_sample("s4", "t", {kUnkLabel}));
    gold.samples.push_back(make_sample("s5", "t", {"x"}));
    const std::vector<PredRecord> preds = {
        {"s1", {"x"}}, {"s2", {"z", "w"}}, {"s3", {"q"}}, {"s5", {"x"}}};
    const F1Report r = micro_f1(preds, gold);
    CHECK(r.tp == 3);
    CHECK(r.fp == 2);
    CHECK(r.fn == 2);
    CHECK(r.precision == doctest::Approx(0.6).epsilon(1e-9));
    CHECK(r.recall == doctest::Approx(0.6).epsilon(1e-9));
    CHECK(r.f1 == doctest::Approx(0.6).epsilon(1e-9));
}

TEST_CASE("micro f1: guards") {
    Dataset gold;
    gold.samples.push_back(make_sample("a", "t", {"x"}));
    CHECK_THROWS_WITH_AS(micro_f1({{"ghost", {"x"}}}, gold), doctest::Contains("ghost"), Error);
    CHECK_THROWS_AS(micro_f1({{"a", {"x"}}, {"a", {"y"}}}, gold), Error);

    // Empty predictions, empty gold labels: zero denominators stay zero.
    Dataset none;
    none.samples.push_back(make_sample("a", "t", {}));
    const F1Report r = micro_f1({}, none);
    CHECK(r.f1 == 0.0);
}

TEST_CASE("micro f1 is invariant to sample order") {
    Dataset gold;
    gold.samples.push_back(make_sample("a", "t", {"x"}));
    gold.samples.push_back(make_sample("b", "t", {"y", "z"}));
    gold.samples.push_back(make_sample("c", "t", {}));
    std::vector<PredRecord> preds = {{"a", {"x", "y"}}, {"b", {"y"}}, {"c", {}}};
    const F1Report fwd = micro_f1(preds, gold);

    std::reverse(gold.samples.begin(), gold.samples.end());
    std::reverse(preds.begin(), preds.end());
    const F1Report rev = micro_f1(preds, gold);
    CHECK(fwd.tp == rev.tp);
    CHECK(fwd.fp == rev.fp);
    CHECK(fwd.fn == rev.fn);
}

TEST_CASE("token jaccard and span eval basics") {
    CHECK(token_jaccard("communication skills", "communication skills") == doctest::Approx(1.0));
    CHECK(token_jaccard("strong communication skills", "communication skills") ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-12));

    // Identical span sets.
    SpanEvalReport same = span_eval({{{"alpha beta", "gamma"}, {"alpha beta", "gamma"}}});
    CHECK(same.exact_pct == doctest::Approx(100.0));
    CHECK(same.containment_pct == doctest::Approx(100.0));
    CHECK(same.mean_jaccard == doctest::Approx(1.0));

    // Containment without exactness.
    SpanEvalReport contain =
        span_eval({{{"strong communication skills"}, {"communication skills"}}});
    CHECK(contain.exact_pct == doctest::Approx(0.0));
    CHECK(contain.containment_pct == doctest::Approx(100.0));
    CHECK(contain.mean_jaccard == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("span eval equals a brute-force alignment oracle on a crafted fixture") {
    // 12 predicted spans across 4 samples.
    const std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> fixture = {
        {{"manage budgets", "lead the team", "report results"},
         {"manage budgets", "team leadership"}},
        {{"write sql queries", "tune databases"}, {"sql", "database tuning", "write reports"}},
        {{"negotiate deals", "close contracts", "travel abroad"}, {}},
        {{"public speaking", "speak publicly", "clear speech", "concise writing"},
         {"public speaking", "writing"}},
    };

    const SpanEvalReport got = span_eval(fixture);

    // Oracle: for every predicted span take the max token-jaccard over gold
    // spans; recompute the three statistics directly.
    std::size_t n_pred = 0, exact = 0, contained = 0;
    double jac_sum = 0;
    for (const auto& [preds, golds] : fixture) {
        for (const auto& p : preds) {
            ++n_pred;
            double best = 0;
            const std::string* arg = nullptr;
            for (const auto& g : golds) {
                const double j = token_jaccard(p, g);
                if (arg == nullptr || j > best) {
                    best = j;
                    arg = &g;
                }
            }
            if (!arg) continue;
            jac_sum += best;
            auto tokens = [](const std::string& s) {
                std::set<std::string> out;
                std::string cur;
                for (char c : s) {
                    if (std::isalnum(static_cast<unsigned char>(c))) {
                        cur.push_back(static_cast<char>(std::tolower(c)));
                    } else if (!cur.empty()) {
                        out.insert(cur);
                        cur.clear();
                    }
                }
                if (!cur.empty()) out.insert(cur);
                return out;
            };
            const auto tp = tokens(p);
            const auto tg = tokens(*arg);
            if (tp == tg) {
                ++exact;
                ++contained;
            } else if (std::includes(tp.begin(), tp.end(), tg.begin(), tg.end())) {
                ++contained;
            }
        }
    }
    CHECK(got.n_pred == n_pred);
    CHECK(got.exact_pct == doctest::Approx(100.0 * exact / n_pred).epsilon(1e-12));
    CHECK(got.containment_pct == doctest::Approx(100.0 * contained / n_pred).epsilon(1e-12));
    CHECK(got.mean_jaccard == doctest::Approx(jac_sum / n_pred).epsilon(1e-12));

    // Exactness never exceeds containment.
    CHECK(got.exact_pct <= got.containment_pct);
}

TEST_CASE("dataset stats per split") {
    Dataset d;
    d.samples.push_back(make_sample("a", "one two three four five six seven eight nine ten",
                                    {"x"}, "train"));
    d.samples.push_back(make_sample(
        "b", "w1 w2 w3 w4 w5 w6 w7 w8 w9 w10 w11 w12 w13 w14 w15 w16 w17 w18 w19 w20",
        {"x", "y", kUnkLabel}, "train"));
    const auto stats = dataset_stats(d);
    const SplitStats& train = stats.at("train");
    CHECK(train.n_samples == 2);
    CHECK(train.avg_skills == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(train.avg_words == doctest::Approx(15.0).epsilon(1e-12));
    CHECK(train.pct_unk == doctest::Approx(100.0 / 4.0).epsilon(1e-12));

    Dataset unk;
    unk.samples.push_back(make_sample("u1", "t", {kUnkLabel}, "dev"));
    unk.samples.push_back(make_sample("u2", "t", {kUnkLabel}, "dev"));
    CHECK(dataset_stats(unk).at("dev").pct_unk == doctest::Approx(100.0));

    // No-skill samples count zero labels.
    Dataset none;
    none.samples.push_back(make_sample("n1", "a b", {}, "test"));
    none.samples.push_back(make_sample("n2", "a b c d", {"x"}, "test"));
    const auto st = dataset_stats(none).at("test");
    CHECK(st.avg_skills == doctest::Approx(0.5));
    CHECK(st.avg_words == doctest::Approx(3.0));
}

TEST_CASE("stats over a concatenation equal the sample-weighted combination") {
    Dataset left, right, both;
    left.samples.push_back(make_sample("a", "w w w", {"x"}, "s"));
    left.samples.push_back(make_sample("b", "w w", {}, "s"));
    right.samples.push_back(make_sample("c", "w w w w w", {"x", "y"}, "s"));
    both.samples = left.samples;
    both.samples.insert(both.samples.end(), right.samples.begin(), right.samples.end());

    const auto sl = dataset_stats(left).at("s");
    const auto sr = dataset_stats(right).at("s");
    const auto sb = dataset_stats(both).at("s");
    const double n = static_cast<double>(sl.n_samples + sr.n_samples);
    CHECK(sb.avg_skills ==
          doctest::Approx((sl.avg_skills * sl.n_samples + sr.avg_skills * sr.n_samples) / n)
              .epsilon(1e-12));
    CHECK(sb.avg_words ==
          doctest::Approx((sl.avg_words * sl.n_samples + sr.avg_words * sr.n_samples) / n)
              .epsilon(1e-12));
}

TEST_CASE("length stratified eval partitions by word count") {
    Dataset gold;
    // Three short (< 12 words), three long.
    gold.samples.push_back(make_sample("s1", "one two three", {"x"}));
    gold.samples.push_back(make_sample("s2", "a b c d", {"y"}));
    gold.samples.push_back(make_sample("s3", "tiny sample", {}));
    const std::string long_text = "w1 w2 w3 w4 w5 w6 w7 w8 w9 w10 w11 w12 w13";
    gold.samples.push_back(make_sample("l1", long_text, {"x"}));
    gold.samples.push_back(make_sample("l2", long_text + " extra", {"x", "y"}));
    gold.samples.push_back(make_sample("l3", long_text + " more words", {}));

    const std::vector<PredRecord> preds = {{"s1", {"x"}}, {"s2", {}},    {"s3", {"x"}},
                                           {"l1", {"x"}}, {"l2", {"x"}}, {"l3", {}}};

    const StratifiedReport r = length_stratified_eval(preds, gold, 12);
    REQUIRE(r.short_side.has_value());
    REQUIRE(r.long_side.has_value());
    CHECK(r.short_side->n_samples == 3);
    CHECK(r.long_side->n_samples == 3);
    CHECK(r.short_side->n_samples + r.long_side->n_samples == gold.samples.size());

    // Hand counts. Short: tp 1 (s1 x), fp 1 (s3 x), fn 1 (s2 y).
    CHECK(r.short_side->tp == 1);
    CHECK(r.short_side->fp == 1);
    CHECK(r.short_side->fn == 1);
    // Long: tp 2 (l1 x, l2 x), fn 1 (l2 y).
    CHECK(r.long_side->tp == 2);
    CHECK(r.long_side->fp == 0);
    CHECK(r.long_side->fn == 1);

    // Threshold 0: everything lands in the long stratum, equal to micro_f1.
    const StratifiedReport all_long = length_stratified_eval(preds, gold, 0);
    CHECK_FALSE(all_long.short_side.has_value());
    REQUIRE(all_long.long_side.has_value());
    const F1Report full = micro_f1(preds, gold);
    CHECK(all_long.long_side->tp == full.tp);
    CHECK(all_long.long_side->fp == full.fp);
    CHECK(all_long.long_side->fn == full.fn);
    CHECK(all_long.long_side->f1 == doctest::Approx(full.f1).epsilon(1e-12));
}

TEST_CASE("prediction records parse from wire format") {
    const Json j{{"id", "p1"}, {"predicted", Json::array({"a", "UNK"})}};
    const PredRecord r = pred_record_from_json(j);
    CHECK(r.id == "p1");
    CHECK(r.predicted == std::vector<std::string>{"a", "UNK"});

    // The NONE literal reads back as the empty label set.
    const Json none{{"id", "p2"}, {"predicted", Json::array({"NONE"})}};
    CHECK(pred_record_from_json(none).predicted.empty());
}
