// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Criterion 5 needs externally supplied data and reports SKIP when the
// environment does not provide it.

#include "skillforge/combigen.hpp"
#include "skillforge/common.hpp"
#include "skillforge/eval.hpp"
#include "skillforge/fuzz.hpp"
#include "skillforge/jsonl.hpp"
#include "skillforge/manifest.hpp"
#include "skillforge/quality.hpp"
#include "skillforge/refinery.hpp"
#include "skillforge/tags.hpp"
#include "skillforge/taxonomy.hpp"
#include "skillforge/vectors.hpp"

#include "support/pipeline_runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace fs = std::filesystem;
using namespace skillforge;

namespace {

struct Outcome {
    bool failed = false;
    bool skipped = false;
    std::string detail;
};

int g_failures = 0;

void run_criterion(int number, const std::string& title, const std::function<Outcome()>& body,
                   double max_seconds = 0.0) {
    Outcome outcome;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        outcome = body();
    } catch (const std::exception& e) {
        outcome.failed = true;
        outcome.detail = e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!outcome.failed && max_seconds > 0 && secs > max_seconds) {
        outcome.failed = true;
        outcome.detail = "runtime budget exceeded";
    }
    const char* verdict = outcome.failed ? "FAIL" : outcome.skipped ? "SKIP" : "PASS";
    std::printf("[%s] criterion %d: %s (%.2fs)%s%s\n", verdict, number, title.c_str(), secs,
                outcome.detail.empty() ? "" : " -- ", outcome.detail.c_str());
    if (outcome.failed) ++g_failures;
}

void expect(bool condition, const std::string& what) {
    if (!condition) throw Error(what);
}

// -------- criterion 1: deterministic core --------

double cosine_oracle(const Vector& u, const Vector& v) {
    double dot = 0, a = 0, b = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        dot += u[i] * v[i];
        a += u[i] * u[i];
        b += v[i] * v[i];
    }
    return dot / (std::sqrt(a) * std::sqrt(b));
}

std::size_t lev_oracle(const std::string& a, const std::string& b) {
    std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
    for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
    for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        for (std::size_t j = 1; j <= b.size(); ++j) {
            d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                                d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
        }
    }
    return d[a.size()][b.size()];
}

int ratio_oracle(const std::string& a, const std::string& b) {
    const std::size_t m = std::max(a.size(), b.size());
    if (m == 0) return 100;
    return static_cast<int>(std::lround(100.0 * (1.0 - double(lev_oracle(a, b)) / double(m))));
}

int token_set_ratio_oracle(const std::string& a, const std::string& b) {
    auto tokens = [](const std::string& s) {
        std::set<std::string> out;
        std::string cur;
        for (char c : s) {
            if (std::isalnum(static_cast<unsigned char>(c))) {
                cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
            } else if (!cur.empty()) {
                out.insert(cur);
                cur.clear();
            }
        }
        if (!cur.empty()) out.insert(cur);
        return out;
    };
    const auto sa = tokens(a);
    const auto sb = tokens(b);
    std::vector<std::string> inter, da, db;
    std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(inter));
    std::set_difference(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(da));
    std::set_difference(sb.begin(), sb.end(), sa.begin(), sa.end(), std::back_inserter(db));
    auto joined = [](const std::vector<std::string>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + v[i];
        return s;
    };
    const std::string i_str = joined(inter);
    std::string x = i_str, y = i_str;
    if (!da.empty()) x += (x.empty() ? "" : " ") + joined(da);
    if (!db.empty()) y += (y.empty() ? "" : " ") + joined(db);
    return std::max({ratio_oracle(i_str, x), ratio_oracle(i_str, y), ratio_oracle(x, y)});
}

Outcome criterion1() {
    // Softmax: normalization on random candidate sets plus the closed form.
    SeededRng rng(101);
    for (int trial = 0; trial < 25; ++trial) {
        PopularityTable pop;
        std::vector<std::string> ids;
        const std::size_t n = 2 + rng.uniform_int(0, 8);
        for (std::size_t i = 0; i < n; ++i) {
            const std::string id = "p" + std::to_string(i);
            ids.push_back(id);
            pop.scores[id] = rng.uniform01() * 8.0 - 4.0;
        }
        const auto probs = selection_probs(ids, pop, 1.0);
        double sum = 0;
        for (double p : probs) sum += p;
        expect(std::abs(sum - 1.0) <= 1e-9, "softmax normalization off");
    }
    PopularityTable closed;
    closed.scores = {{"a", 0.0}, {"b", std::log(3.0)}};
    const auto probs = selection_probs({"a", "b"}, closed, 1.0);
    expect(std::abs(probs[0] - 0.25) <= 1e-9 && std::abs(probs[1] - 0.75) <= 1e-9,
           "softmax closed form off");

    // kNN vs the exhaustive scan on 100 random 32-d vectors.
    std::vector<std::string> keys;
    std::vector<Vector> rows;
    for (int i = 0; i < 100; ++i) {
        char buf[8];
        std::snprintf(buf, sizeof buf, "v%03d", i);
        keys.emplace_back(buf);
        Vector v(32);
        for (auto& x : v) x = rng.uniform01() * 2 - 1;
        rows.push_back(std::move(v));
    }
    const VectorIndex index(keys, rows);
    Vector query(32);
    for (auto& x : query) x = rng.uniform01() * 2 - 1;
    for (std::size_t k : {std::size_t{1}, std::size_t{5}, std::size_t{20}}) {
        std::vector<std::pair<double, std::string>> oracle;
        for (std::size_t i = 0; i < keys.size(); ++i) {
            oracle.emplace_back(cosine_oracle(query, rows[i]), keys[i]);
        }
        std::sort(oracle.begin(), oracle.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first > b.first;
            return a.second < b.second;
        });
        const auto got = index.knn(query, k);
        expect(got.size() == k, "knn size");
        for (std::size_t i = 0; i < k; ++i) {
            expect(got[i].first == oracle[i].second, "knn order differs from oracle");
        }
    }

    // Cosine vs the scalar loop on 20 pairs.
    for (int i = 0; i < 20; ++i) {
        Vector a(16), b(16);
        for (auto& x : a) x = rng.uniform01() * 2 - 1;
        for (auto& x : b) x = rng.uniform01() * 2 - 1;
        expect(std::abs(cosine(a, b) - cosine_oracle(a, b)) <= 1e-9, "cosine off oracle");
    }

    // token_set_ratio vs the reference oracle on 50 crafted pairs.
    const std::vector<std::string> vocab = {"alpha", "data",  "skill", "match",  "teams",
                                            "plan",  "write", "model", "système", "clean"};
    std::vector<std::pair<std::string, std::string>> pairs = {
        {"fuzzy wuzzy", "wuzzy fuzzy"},
        {"abc", "abc"},
        {"manage databases", "database management systems"},
        {"", ""},
        {"one two", "three four"},
    };
    while (pairs.size() < 50) {
        auto make = [&] {
            std::string s;
            const std::size_t n = rng.uniform_int(0, 5);
            for (std::size_t w = 0; w < n; ++w) {
                if (!s.empty()) s += " ";
                s += vocab[rng.uniform_int(0, vocab.size() - 1)];
            }
            return s;
        };
        pairs.emplace_back(make(), make());
    }
    for (const auto& [a, b] : pairs) {
        expect(token_set_ratio(a, b) == token_set_ratio_oracle(a, b), "token_set_ratio off oracle");
        expect(token_set_ratio(a, b) == token_set_ratio(b, a), "token_set_ratio asymmetric");
    }
    expect(token_set_ratio("x y z", "z z y x x") == 100, "reorder invariance");

    // Tag parser: 25 crafted round trips and 5 drifted rejections.
    SeededRng tag_rng(7);
    const std::vector<std::string> words = {"plan",   "budgets", "lead",  "teams", "write",
                                            "clear",  "reports", "speak", "well",  "daily"};
    int round_trips = 0;
    for (int i = 0; i < 25; ++i) {
        std::vector<std::string> sentence_words;
        const std::size_t len = 5 + tag_rng.uniform_int(0, 4);
        for (std::size_t w = 0; w < len; ++w) {
            sentence_words.push_back(words[tag_rng.uniform_int(0, words.size() - 1)]);
        }
        std::string text;
        std::vector<std::pair<std::size_t, std::size_t>> extents;
        for (const auto& w : sentence_words) {
            if (!text.empty()) text += " ";
            extents.emplace_back(text.size(), text.size() + w.size());
            text += w;
        }
        // Tag one or two non-overlapping word runs.
        const std::size_t first = tag_rng.uniform_int(0, len - 2);
        std::vector<TaggedSpan> spans;
        TaggedSpan s1;
        s1.start = extents[first].first;
        s1.end = extents[first + 1].second;
        s1.surface = text.substr(s1.start, s1.end - s1.start);
        spans.push_back(s1);
        const std::string tagged = render_tagged(text, spans);
        const auto parsed = parse_tags(tagged, text);
        expect(parsed.size() == spans.size(), "round trip span count");
        expect(parsed[0].start == s1.start && parsed[0].end == s1.end, "round trip offsets");
        ++round_trips;
    }
    expect(round_trips == 25, "round trip count");
    const std::vector<std::pair<std::string, std::string>> drifted = {
        {"a @@b## x", "a b c"},
        {"@@wrong words here##", "entirely different text"},
        {"lead @@teams## now", "lead teams later"},
        {"@@plan## budgets", "plans budgets"},
        {"speak @@well## today friends", "speak well today"},
    };
    for (const auto& [tagged, original] : drifted) {
        expect(try_parse_tags(tagged, original).status == TagParseStatus::drift,
               "drift not rejected: " + tagged);
    }
    return {};
}

// -------- criterion 2: combination laws --------

Outcome criterion2() {
    // 30 skills in 5 planted clusters of 6; in-cluster similarity is high by
    // construction, cross-cluster near zero.
    SeededRng rng(202);
    std::vector<SkillEntry> entries;
    std::vector<std::string> keys;
    std::vector<Vector> rows;
    const std::size_t dim = 24;
    std::vector<Vector> centers;
    for (int c = 0; c < 5; ++c) {
        Vector center(dim, 0.0);
        for (std::size_t d = 0; d < dim; ++d) center[d] = rng.uniform01() * 2 - 1;
        centers.push_back(center);
    }
    for (int i = 0; i < 30; ++i) {
        char id[8];
        std::snprintf(id, sizeof id, "s%02d", i);
        entries.push_back({id, std::string("skill ") + id, "", {}, ""});
        Vector v = centers[i % 5];
        for (auto& x : v) x += 0.02 * (rng.uniform01() - 0.5);
        keys.emplace_back(id);
        rows.push_back(std::move(v));
    }
    const Taxonomy t(std::move(entries));
    const VectorIndex index(keys, rows);
    PopularityTable pop;
    for (const auto& k : keys) pop.scores[k] = rng.uniform01();

    CombigenParams params; // k=20, T=0.83, n_max=5
    const auto combos = generate_all(t, index, pop, params, 2, 424242);

    std::map<std::string, int> seed_counts;
    for (const auto& combo : combos) {
        seed_counts[combo.seed] += 1;
        expect(combo.size() >= 1 && combo.size() <= 5, "combination size out of range");
        expect(combo.members.front() == combo.seed, "seed not the first member");
        std::set<std::string> distinct(combo.members.begin(), combo.members.end());
        expect(distinct.size() == combo.members.size(), "duplicate members");
        for (std::size_t i = 1; i < combo.members.size(); ++i) {
            const double sim =
                cosine(index.vector_for(combo.seed), index.vector_for(combo.members[i]));
            expect(sim > params.similarity_threshold, "member below the similarity threshold");
        }
    }
    expect(combos.size() == 60, "combination count");
    for (const auto& k : keys) {
        expect(seed_counts[k] == 2, "seed count != rounds");
    }

    const auto again = generate_all(t, index, pop, params, 2, 424242);
    for (std::size_t i = 0; i < combos.size(); ++i) {
        expect(again[i].members == combos[i].members, "rerun differs under the same seed");
    }

    // At least one multi-member combination comes out of planted clusters.
    expect(std::any_of(combos.begin(), combos.end(),
                       [](const SkillCombination& c) { return c.size() > 1; }),
           "clusters produced no multi-member combinations");
    return {};
}

// -------- criterion 3: replay pipeline goldens --------

Outcome criterion3() {
    const fs::path fixtures = testing::find_fixtures_dir();
    const std::string config = (fixtures / "demo_config.json").string();
    expect(fs::exists(config), "demo_config.json missing");

    const fs::path run_a = fs::temp_directory_path() / "sf_accept" / "a";
    const fs::path run_b = fs::temp_directory_path() / "sf_accept" / "b";
    fs::remove_all(run_a);
    fs::remove_all(run_b);
    fs::create_directories(run_a);
    fs::create_directories(run_b);

    // Replay-mode gateways are built over a transport that throws on use;
    // finishing both runs implies zero network calls. Stage chatter is
    // silenced so the criterion lines stay readable.
    {
        std::ostringstream sink;
        auto* saved = std::cout.rdbuf(sink.rdbuf());
        try {
            testing::run_full_pipeline(config, run_a.string(), "replay");
            testing::run_full_pipeline(config, run_b.string(), "replay");
        } catch (...) {
            std::cout.rdbuf(saved);
            throw;
        }
        std::cout.rdbuf(saved);
    }

    for (const auto& name : testing::pipeline_artifacts()) {
        const std::string a = read_file((run_a / name).string());
        const std::string b = read_file((run_b / name).string());
        expect(a == b, "replay outputs differ between runs: " + name);
        const fs::path golden = fixtures / "golden" / name;
        expect(fs::exists(golden), "golden missing: " + name);
        expect(a == read_file(golden.string()), "replay differs from committed golden: " + name);
    }
    return {};
}

// -------- criterion 4: metric fixtures --------

class PlantedEmbedder : public EmbeddingProvider {
public:
    std::map<std::string, Vector> vectors;
    std::string id() const override { return "planted"; }
    std::vector<Vector> embed(const std::vector<std::string>& texts) override {
        std::vector<Vector> out;
        for (const auto& t : texts) out.push_back(vectors.at(t));
        return out;
    }
    std::vector<TokenEmbedding> embed_tokens(const std::string&) override { return {}; }
};

Outcome criterion4() {
    // Ten handcrafted samples: six positives across two skills, one UNK,
    // one no-skill, and two more positives that stress every metric.
    std::vector<SkillEntry> entries = {{"k1", "alpha skill", "", {}, ""},
                                       {"k2", "beta craft", "", {}, ""}};
    const Taxonomy taxonomy(std::move(entries));

    PlantedEmbedder embedder;
    embedder.vectors["alpha skill"] = {1, 0};
    embedder.vectors["beta craft"] = {0, 1};

    struct Spec {
        std::string id;
        std::string text;
        std::vector<std::string> labels;
        double ppl;
        Vector text_vec;
    };
    const std::vector<Spec> table = {
        {"s01", "uses alpha skill daily", {"k1"}, 10.0, {1, 0}},
        {"s02", "profound beta craft expertise", {"k2"}, 20.0, {0, 1}},
        {"s03", "alpha skill and beta craft together", {"k1", "k2"}, 30.0, {std::sqrt(0.5), std::sqrt(0.5)}},
        {"s04", "nothing explicit in this one", {"k1"}, 40.0, {1, 0}},
        {"s05", "subtle craftwork shows", {"k2"}, 50.0, {0.6, 0.8}},
        {"s06", "short one", {kUnkLabel}, 60.0, {1, 0}},
        {"s07", "an entirely skill free sentence about the office", {}, 70.0, {0, 1}},
        {"s08", "one two three four five six seven eight nine ten eleven twelve alpha skill",
         {"k1"}, 80.0, {1, 0}},
        {"s09", "when the quarter closes the beta craft team ships reports on time regularly",
         {"k2"}, 90.0, {0, 1}},
        {"s10", "plain text", {"k1"}, 1000.0, {0.8, 0.6}},
    };

    Dataset dataset;
    std::map<std::string, double> ppl;
    for (const auto& row : table) {
        Sample s;
        s.id = row.id;
        s.text = row.text;
        s.labels = row.labels;
        s.split = "test";
        dataset.samples.push_back(s);
        ppl[row.text] = row.ppl;
        embedder.vectors[row.text] = row.text_vec;
    }

    auto transport = std::make_unique<ScriptedTransport>(
        [](const ChatRequest&) { return std::string(); },
        [ppl](const std::string&, const std::string& text) {
            return ScoreResponse{{text}, {-std::log(ppl.at(text))}};
        });
    RetryPolicy fast;
    fast.max_attempts = 1;
    fast.backoff_seconds = {};
    LlmGateway scorer(GatewayMode::live, std::move(transport), "", "mock", fast);

    // Perplexity: hand-computed median of {10..90,1000} = (50+60)/2 = 55;
    // mean = (10+20+...+90+1000)/10 = 145.
    const auto [median, mean] = perplexity_metric(dataset, scorer);
    expect(std::abs(median - 55.0) <= 1e-9, "perplexity median");
    expect(std::abs(mean - 145.0) <= 1e-9, "perplexity mean");

    // S2SIM pairs, in dataset order:
    //   s01 k1:1, s02 k2:1, s03 k1:sqrt(.5) k2:sqrt(.5), s04 k1:1,
    //   s05 k2:0.8, s08 k1:1, s09 k2:1, s10 k1:0.8 -> mean over 9 pairs.
    const double expected_s2sim =
        (1.0 + 1.0 + std::sqrt(0.5) + std::sqrt(0.5) + 1.0 + 0.8 + 1.0 + 1.0 + 0.8) / 9.0;
    expect(std::abs(s2sim(dataset, taxonomy, embedder) - expected_s2sim) <= 1e-9, "s2sim");

    // Explicitness: name-in-text pairs are s01, s02, s03 (both), s08, s09 ->
    // 6 of 9 pairs.
    expect(std::abs(explicitness(dataset, taxonomy) - 100.0 * 6.0 / 9.0) <= 1e-9, "explicitness");

    // Micro-F1 with hand-tallied counts.
    //   s01 {k1}/{k1} tp1; s02 {k2}/{} fn1; s03 {k1,k2}/{k1} tp1 fn1;
    //   s04 {k1}/{k1,k2} tp1 fp1; s05 {k2}/{k2} tp1; s06 {UNK}/{UNK} tp1;
    //   s07 {}/{k1} fp1; s08 {k1}/{k1} tp1; s09 {k2}/{UNK} fp1 fn1;
    //   s10 {k1}/{} fn1.
    // totals tp 6, fp 3, fn 4 -> P 6/9, R 6/10.
    const std::vector<PredRecord> preds = {
        {"s01", {"k1"}}, {"s02", {}},   {"s03", {"k1"}},       {"s04", {"k1", "k2"}},
        {"s05", {"k2"}}, {"s06", {kUnkLabel}}, {"s07", {"k1"}}, {"s08", {"k1"}},
        {"s09", {kUnkLabel}}, {"s10", {}},
    };
    const F1Report f1 = micro_f1(preds, dataset);
    expect(f1.tp == 6 && f1.fp == 3 && f1.fn == 4, "micro f1 counts");
    expect(std::abs(f1.precision - 6.0 / 9.0) <= 1e-9, "precision");
    expect(std::abs(f1.recall - 6.0 / 10.0) <= 1e-9, "recall");
    const double pr = 6.0 / 9.0, rc = 6.0 / 10.0;
    expect(std::abs(f1.f1 - 2 * pr * rc / (pr + rc)) <= 1e-9, "f1");

    // Span overlap: three predicted spans against two gold spans.
    //   pred "alpha skill" vs gold "alpha skill"        -> exact, jac 1
    //   pred "strong beta craft" vs gold "beta craft"   -> containment, jac 2/3
    //   pred "unrelated words" vs gold (none)           -> jac 0
    const SpanEvalReport spans = span_eval({
        {{"alpha skill"}, {"alpha skill"}},
        {{"strong beta craft"}, {"beta craft"}},
        {{"unrelated words"}, {}},
    });
    expect(std::abs(spans.exact_pct - 100.0 / 3.0) <= 1e-9, "span exact pct");
    expect(std::abs(spans.containment_pct - 200.0 / 3.0) <= 1e-9, "span containment pct");
    expect(std::abs(spans.mean_jaccard - (1.0 + 2.0 / 3.0 + 0.0) / 3.0) <= 1e-9, "span jaccard");
    expect(spans.exact_pct <= spans.containment_pct, "exact must not exceed containment");

    // Dataset stats, hand-computed: 10 label instances over 10 samples with
    // one UNK; word counts summed by hand = 4+4+6+5+3+2+8+14+13+2 = 61.
    const auto stats = dataset_stats(dataset);
    const SplitStats& st = stats.at("test");
    expect(st.n_samples == 10, "stats n");
    expect(std::abs(st.avg_skills - 1.0) <= 1e-9, "avg skills");
    expect(std::abs(st.pct_unk - 10.0) <= 1e-9, "pct unk");
    expect(std::abs(st.avg_words - 6.1) <= 1e-9, "avg words");

    // Length stratification partitions the set; short+long recombine.
    const StratifiedReport strat = length_stratified_eval(preds, dataset, 12);
    const std::size_t short_n = strat.short_side ? strat.short_side->n_samples : 0;
    const std::size_t long_n = strat.long_side ? strat.long_side->n_samples : 0;
    expect(short_n + long_n == dataset.samples.size(), "strata do not partition");
    const std::size_t tp_sum = (strat.short_side ? strat.short_side->tp : 0) +
                               (strat.long_side ? strat.long_side->tp : 0);
    expect(tp_sum == f1.tp, "strata tp does not recombine");
    return {};
}

// -------- criterion 5: external reproduction (optional) --------

Outcome criterion5() {
    const char* train = std::getenv("SKILLFORGE_EXTERNAL_TRAIN");
    const char* dev = std::getenv("SKILLFORGE_EXTERNAL_DEV");
    const char* test = std::getenv("SKILLFORGE_EXTERNAL_TEST");
    Outcome outcome;
    if (!train || !dev || !test) {
        outcome.skipped = true;
        outcome.detail =
            "set SKILLFORGE_EXTERNAL_TRAIN/DEV/TEST (and optionally "
            "SKILLFORGE_EXTERNAL_PREDS/GOLD) to check released-data statistics";
        return outcome;
    }

    struct Expect {
        const char* path;
        const char* split;
        double avg_skills, pct_unk, avg_words;
        std::size_t n;
    };
    const std::vector<Expect> expectations = {
        {train, "train", 2.6, 7.9, 28.2, 6352},
        {dev, "dev", 2.1, 8.3, 27.8, 1316},
        {test, "test", 2.6, 8.4, 28.1, 1272},
    };
    std::ostringstream detail;
    for (const auto& e : expectations) {
        Dataset d;
        for (const Json& rec : read_artifact(e.path).records) {
            Sample s = sample_from_json(rec);
            s.split = e.split;
            d.samples.push_back(std::move(s));
        }
        const SplitStats st = dataset_stats(d).at(e.split);
        auto round1 = [](double x) { return std::round(x * 10.0) / 10.0; };
        expect(st.n_samples == e.n,
               std::string(e.split) + ": sample count " + std::to_string(st.n_samples));
        expect(round1(st.avg_skills) == e.avg_skills, std::string(e.split) + ": avg skills");
        expect(round1(st.pct_unk) == e.pct_unk, std::string(e.split) + ": pct unk");
        expect(round1(st.avg_words) == e.avg_words, std::string(e.split) + ": avg words");
        detail << e.split << " ok; ";
    }

    // Optional: live scoring/embedding endpoints reproduce the published
    // quality metrics within 10% relative (model-version drift expected).
    const char* score_url = std::getenv("SKILLFORGE_SCORE_URL");
    const char* embed_url = std::getenv("SKILLFORGE_EMBED_URL");
    if (score_url && embed_url) {
        Dataset all;
        for (const auto& e : expectations) {
            for (const Json& rec : read_artifact(e.path).records) {
                Sample s = sample_from_json(rec);
                all.samples.push_back(std::move(s));
            }
        }
        // The label space ships with the dataset via an env-provided
        // taxonomy file in the canonical CSV layout.
        const char* taxonomy_path = std::getenv("SKILLFORGE_EXTERNAL_TAXONOMY");
        expect(taxonomy_path != nullptr,
               "SKILLFORGE_EXTERNAL_TAXONOMY is required with the endpoint checks");
        TableFormat format;
        format.alt_label_separator = "|";
        const Taxonomy taxonomy = load_taxonomy(taxonomy_path, format);

        const char* score_model_env = std::getenv("SKILLFORGE_SCORE_MODEL");
        const char* embed_model_env = std::getenv("SKILLFORGE_EMBED_MODEL");
        LlmGateway scorer(GatewayMode::live,
                          std::make_unique<HttpChatTransport>("", "", score_url, "/score"),
                          "", score_model_env ? score_model_env : "gpt2-class");
        HttpEmbeddingProvider embedder(embed_url, embed_model_env ? embed_model_env : "jobbert-class");
        const QualityReport q = quality_report(all, taxonomy, scorer, embedder);
        auto within = [](double got, double want) {
            return std::abs(got - want) / want <= 0.10;
        };
        expect(within(q.perplexity_median, 44.3), "perplexity median off by more than 10%");
        expect(within(q.s2sim, 0.744), "s2sim off by more than 10%");
        expect(within(q.explicitness_pct, 6.9), "explicitness off by more than 10%");
        detail << "quality metrics within 10%; ";
    } else {
        detail << "quality-endpoint check skipped (SKILLFORGE_SCORE_URL/EMBED_URL unset); ";
    }

    // Optional: score any supplied prediction file against its gold file.
    const char* preds_path = std::getenv("SKILLFORGE_EXTERNAL_PREDS");
    const char* gold_path = std::getenv("SKILLFORGE_EXTERNAL_GOLD");
    if (preds_path && gold_path) {
        Dataset gold;
        for (const Json& rec : read_artifact(gold_path).records) {
            gold.samples.push_back(sample_from_json(rec));
        }
        std::vector<PredRecord> preds;
        for (const Json& rec : read_artifact(preds_path).records) {
            preds.push_back(pred_record_from_json(rec));
        }
        const F1Report r = micro_f1(preds, gold);
        detail << "micro-F1 " << r.f1 * 100.0 << " (P " << r.precision * 100.0 << ", R "
               << r.recall * 100.0 << "); ";
    }
    outcome.detail = detail.str();
    return outcome;
}

// -------- criterion 6: refinement threshold behavior --------

Outcome criterion6() {
    PlantedEmbedder embedder;
    std::vector<SkillEntry> entries = {{"keep", "kept skill", "", {}, ""},
                                       {"drop", "dropped skill", "", {}, ""}};
    const Taxonomy t(std::move(entries));
    embedder.vectors["kept skill"] = {1, 0};
    embedder.vectors["dropped skill"] = {1, 0};
    embedder.vectors["Surface Hi"] = {0.71, std::sqrt(1 - 0.71 * 0.71)};
    embedder.vectors["Surface Lo"] = {0.69, std::sqrt(1 - 0.69 * 0.69)};

    RawSample sample;
    sample.id = "r1";
    sample.text = "carrier text without the surfaces";
    sample.provenance = Provenance::dense;
    sample.gold_labels = {"keep", "drop"};

    const std::vector<SpanSkillPair> pairs = {
        {"keep", {0, 0, "Surface Hi", ""}},
        {"drop", {0, 0, "Surface Lo", ""}},
    };
    const RefinedSample refined = refine_labels(sample, t, pairs, embedder, 0.7);
    expect(refined.final_labels == std::vector<std::string>{"keep"},
           "0.71 must be kept and 0.69 dropped at threshold 0.7");

    // Randomized sweep: raising the threshold never enlarges the label set.
    SeededRng rng(606);
    for (int trial = 0; trial < 50; ++trial) {
        PlantedEmbedder sweep;
        std::vector<SkillEntry> sweep_entries;
        std::vector<SpanSkillPair> sweep_pairs;
        RawSample s;
        s.id = "sweep";
        s.text = "no surfaces occur in this text";
        s.provenance = Provenance::dense;
        const std::size_t n = 3 + rng.uniform_int(0, 9);
        for (std::size_t i = 0; i < n; ++i) {
            const std::string id = "k" + std::to_string(i);
            const std::string name = "name " + std::to_string(i);
            const std::string surface = "Surface " + std::to_string(i);
            sweep_entries.push_back({id, name, "", {}, ""});
            sweep.vectors[name] = {1, 0};
            const double c = rng.uniform01() * 2 - 1;
            sweep.vectors[surface] = {c, std::sqrt(1 - c * c)};
            sweep_pairs.push_back({id, {0, 0, surface, ""}});
            s.gold_labels.push_back(id);
        }
        const Taxonomy sweep_t(std::move(sweep_entries));
        std::vector<std::string> previous;
        bool first = true;
        for (double threshold : {-1.0, -0.6, -0.2, 0.0, 0.2, 0.45, 0.7, 0.9, 1.0}) {
            const auto result = refine_labels(s, sweep_t, sweep_pairs, sweep, threshold);
            if (!first) {
                expect(result.final_labels.size() <= previous.size(),
                       "raising the threshold enlarged final_labels");
                for (const auto& label : result.final_labels) {
                    expect(std::find(previous.begin(), previous.end(), label) != previous.end(),
                           "label appeared only at the higher threshold");
                }
            }
            previous = result.final_labels;
            first = false;
        }
    }
    return {};
}

} // namespace

int main() {
    run_criterion(1, "deterministic core properties", criterion1, 10.0);
    run_criterion(2, "combination laws on planted clusters", criterion2, 5.0);
    run_criterion(3, "replay pipeline reproduces the goldens", criterion3, 30.0);
    run_criterion(4, "metric fixtures equal hand-computed values", criterion4);
    run_criterion(5, "released-data statistics (optional, external inputs)", criterion5);
    run_criterion(6, "refinement threshold behavior", criterion6);

    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria satisfied\n");
    return 0;
}
