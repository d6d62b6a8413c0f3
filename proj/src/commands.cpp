#include "skillforge/commands.hpp"

#include "skillforge/common.hpp"
#include "skillforge/config.hpp"
#include "skillforge/eval.hpp"
#include "skillforge/manifest.hpp"
#include "skillforge/quality.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <set>

namespace skillforge {

namespace {

namespace fs = std::filesystem;

struct Stage {
    RunConfig config;
    std::string config_hash;
    fs::path out_dir;
    bool force = false;

    std::string path(const std::string& name) const { return (out_dir / name).string(); }

    Artifact read_checked(const std::string& name, std::map<std::string, std::string>& inputs) const {
        const std::string p = path(name);
        Artifact a = read_artifact(p);
        require_config_hash(a, p, config_hash, force);
        inputs[name] = file_sha256(p);
        return a;
    }
};

Stage open_stage(const CommandOptions& opt) {
    if (opt.config_path.empty()) throw Error("--config is required");
    Stage s;
    s.config = load_run_config(opt.config_path);
    apply_overrides(s.config, {opt.seed, opt.cassette, opt.mode});
    s.config_hash = s.config.config_hash();
    s.out_dir = opt.out_dir.empty() ? fs::path(".") : fs::path(opt.out_dir);
    fs::create_directories(s.out_dir);
    s.force = opt.force;
    return s;
}

Taxonomy universe_from_artifact(const Artifact& a) {
    std::vector<SkillEntry> entries;
    entries.reserve(a.records.size());
    for (const Json& rec : a.records) entries.push_back(entry_from_json(rec));
    return Taxonomy(std::move(entries));
}

Taxonomy selected_subset(const Stage& s, const Taxonomy& universe) {
    if (s.config.taxonomy.selected_ids.empty()) return universe;
    return subset(universe, s.config.taxonomy.selected_ids);
}

VectorIndex index_from_artifact(const Artifact& a) {
    std::vector<std::string> keys;
    std::vector<Vector> rows;
    for (const Json& rec : a.records) {
        keys.push_back(rec.at("id").get<std::string>());
        rows.push_back(rec.at("values").get<Vector>());
    }
    return VectorIndex(std::move(keys), std::move(rows));
}

PopularityTable popularity_from_artifact(const Artifact& a) {
    PopularityTable pop;
    for (const Json& rec : a.records) {
        pop.scores[rec.at("id").get<std::string>()] = rec.at("score").get<double>();
    }
    return pop;
}

Dataset dataset_from_artifact(const Artifact& a) {
    Dataset d;
    d.samples.reserve(a.records.size());
    for (const Json& rec : a.records) d.samples.push_back(sample_from_json(rec));
    return d;
}

VectorIndex restrict_index(const VectorIndex& index, const Taxonomy& t) {
    std::vector<std::string> keys;
    std::vector<Vector> rows;
    for (const auto& [id, _] : t.entries()) {
        keys.push_back(id);
        rows.push_back(index.vector_for(id));
    }
    return VectorIndex(std::move(keys), std::move(rows));
}

void flush_embedder(const std::shared_ptr<EmbeddingProvider>& embedder) {
    if (auto* caching = dynamic_cast<CachingProvider*>(embedder.get())) caching->flush();
}

std::string format_counter_id(std::size_t n) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "s%05zu", n);
    return buf;
}

} // namespace

int cmd_ingest(const CommandOptions& opt) {
    Stage s = open_stage(opt);
    const Taxonomy universe = load_taxonomy(s.config.taxonomy.path, s.config.taxonomy.format);
    // Validate the subset now so later stages get a clean failure here.
    const Taxonomy selected = selected_subset(s, universe);

    std::vector<Json> records;
    for (const auto& [_, e] : universe.entries()) records.push_back(entry_to_json(e));

    ArtifactHeader header{"ingest", s.config_hash, {{"taxonomy_source", file_sha256(s.config.taxonomy.path)}}};
    write_artifact(s.path("taxonomy.jsonl"), header, records);
    std::cout << "ingest: " << universe.size() << " entries (" << selected.size() << " selected)\n";
    return 0;
}

int cmd_embed_taxonomy(const CommandOptions& opt) {
    Stage s = open_stage(opt);
    std::map<std::string, std::string> inputs;
    const Taxonomy universe = universe_from_artifact(s.read_checked("taxonomy.jsonl", inputs));
    auto embedder = make_embedder(s.config);

    std::vector<std::string> ids;
    std::vector<std::string> texts;
    for (const auto& [id, e] : universe.entries()) {
        ids.push_back(id);
        texts.push_back(render_entry(e));
    }
    const auto vectors = embed_texts(texts, *embedder);
    flush_embedder(embedder);

    std::vector<Json> records;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        records.push_back(Json{{"id", ids[i]}, {"values", vectors[i]}});
    }
    write_artifact(s.path("vectors.jsonl"), ArtifactHeader{"embed-taxonomy", s.config_hash, inputs},
                   records);
    std::cout << "embed-taxonomy: " << records.size() << " vectors\n";
    return 0;
}

int cmd_popularity(const CommandOptions& opt) {
    Stage s = open_stage(opt);
    std::map<std::string, std::string> inputs;
    const Taxonomy universe = universe_from_artifact(s.read_checked("taxonomy.jsonl", inputs));
    auto gateway = make_gateway(s.config);

    const PopularityTable pop = popularity(universe, *gateway);
    gateway->flush();

    std::vector<Json> records;
    for (const auto& [id, score] : pop.scores) {
        records.push_back(Json{{"id", id}, {"score", score}});
    }
    write_artifact(s.path("popularity.jsonl"), ArtifactHeader{"popularity", s.config_hash, inputs},
                   records);
    std::cout << "popularity: " << records.size() << " skills scored\n";
    return 0;
}

int cmd_combine(const CommandOptions& opt) {
    Stage s = open_stage(opt);
    std::map<std::string, std::string> inputs;
    const Taxonomy universe = universe_from_artifact(s.read_checked("taxonomy.jsonl", inputs));
    const VectorIndex index = index_from_artifact(s.read_checked("vectors.jsonl", inputs));
    const PopularityTable pop = popularity_from_artifact(s.read_checked("popularity.jsonl", inputs));
    const Taxonomy selected = selected_subset(s, universe);

    const VectorIndex selected_index = restrict_index(index, selected);
    const auto combos = generate_all(selected, selected_index, pop, s.config.combigen,
                                     s.config.rounds, s.config.master_seed);

    std::vector<Json> records;
    records.reserve(combos.size());
    for (const auto& c : combos) records.push_back(combination_to_json(c));
    write_artifact(s.path("combinations.jsonl"), ArtifactHeader{"combine", s.config_hash, inputs},
                   records);
    std::cout << "combine: " << combos.size() << " combinations\n";
    return 0;
}

int cmd_generate(const CommandOptions& opt) {
    Stage s = open_stage(opt);
    std::map<std::string, std::string> inputs;
    const Taxonomy universe = universe_from_artifact(s.read_checked("taxonomy.jsonl", inputs));
    const VectorIndex index = index_from_artifact(s.read_checked("vectors.jsonl", inputs));
    const PopularityTable pop = popularity_from_artifact(s.read_checked("popularity.jsonl", inputs));
    const Artifact combos_artifact = s.read_checked("combinations.jsonl", inputs);
    const Taxonomy selected = selected_subset(s, universe);
    auto gateway = make_gateway(s.config);

    std::vector<RawSample> samples;
    std::size_t counter = 0;
    for (const Json& rec : combos_artifact.records) {
        const SkillCombination combo = combination_from_json(rec);
        samples.push_back(generate_sample(combo, selected, *gateway, s.config.generation.params,
                                          format_counter_id(counter++)));
    }

    if (s.config.generation.negatives_unknown > 0) {
        UnknownNegativeInputs in{universe, selected, index, pop, s.config.combigen};
        auto negatives = generate_negatives_unknown(in, s.config.generation.negatives_unknown,
                                                    *gateway, s.config.generation.params,
                                                    s.config.master_seed, "s", counter);
        counter += negatives.size();
        for (auto& n : negatives) samples.push_back(std::move(n));
    }
    for (auto [kind, count] : {std::pair{NoSkillKind::company, s.config.generation.negatives_company},
                               std::pair{NoSkillKind::perks, s.config.generation.negatives_perks}}) {
        auto negatives = generate_negatives_noskill(kind, count, *gateway,
                                                    s.config.generation.params, "s", counter);
        counter += negatives.size();
        for (auto& n : negatives) samples.push_back(std::move(n));
    }
    gateway->flush();

    std::vector<Json> records;
    records.reserve(samples.size());
    for (const auto& sample : samples) records.push_back(raw_sample_to_json(sample));
    write_artifact(s.path("samples.jsonl"), ArtifactHeader{"generate", s.config_hash, inputs},
                   records);
    std::cout << "generate: " << samples.size() << " samples\n";
    return 0;
}

int cmd_refine(const CommandOptions& opt) {
    Stage s = open_stage(opt);
    std::map<std::string, std::string> inputs;
    const Taxonomy universe = universe_from_artifact(s.read_checked("taxonomy.jsonl", inputs));
    const VectorIndex index = index_from_artifact(s.read_checked("vectors.jsonl", inputs));
    const Artifact samples_artifact = s.read_checked("samples.jsonl", inputs);
    const Taxonomy selected = selected_subset(s, universe);
    auto gateway = make_gateway(s.config);
    auto embedder = make_embedder(s.config);

    const VectorIndex selected_index = restrict_index(index, selected);
    MatcherContext ctx{selected,
                       selected_index,
                       *embedder,
                       *gateway,
                       s.config.match.matcher,
                       SeededRng(derive_seed(s.config.master_seed, 1, "refine")),
                       nullptr};

    std::vector<RefinedSample> refined;
    for (const Json& rec : samples_artifact.records) {
        const RawSample sample = raw_sample_from_json(rec);
        if (is_positive(sample.provenance)) {
            refined.push_back(
                refine_sample(sample, ctx, s.config.refine.tag, *embedder, s.config.refine.threshold));
        } else {
            RefinedSample pass;
            pass.base = sample;
            pass.final_labels = sample.gold_labels;
            refined.push_back(std::move(pass));
        }
    }
    gateway->flush();
    flush_embedder(embedder);

    std::vector<Json> records;
    records.reserve(refined.size());
    for (const auto& r : refined) records.push_back(refined_to_json(r));
    write_artifact(s.path("refined.jsonl"), ArtifactHeader{"refine", s.config_hash, inputs}, records);
    std::cout << "refine: " << refined.size() << " samples\n";
    return 0;
}

int cmd_split(const CommandOptions& opt) {
    Stage s = open_stage(opt);
    std::map<std::string, std::string> inputs;
    const Artifact refined_artifact = s.read_checked("refined.jsonl", inputs);

    std::vector<RefinedSample> refined;
    refined.reserve(refined_artifact.records.size());
    for (const Json& rec : refined_artifact.records) refined.push_back(refined_from_json(rec));

    SeededRng rng(derive_seed(s.config.master_seed, 2, "split"));
    const Dataset dataset = assemble_dataset(refined, s.config.split_fracs, rng);

    std::vector<Json> records;
    records.reserve(dataset.samples.size());
    for (const auto& sample : dataset.samples) records.push_back(sample_to_json(sample));
    write_artifact(s.path("dataset.jsonl"), ArtifactHeader{"split", s.config_hash, inputs}, records);

    const auto stats = dataset_stats(dataset);
    std::cout << "split:\n" << stats_table(stats);
    return 0;
}

int cmd_match(const CommandOptions& opt) {
    Stage s = open_stage(opt);
    std::map<std::string, std::string> inputs;
    const Taxonomy universe = universe_from_artifact(s.read_checked("taxonomy.jsonl", inputs));
    const VectorIndex index = index_from_artifact(s.read_checked("vectors.jsonl", inputs));
    const Taxonomy selected = selected_subset(s, universe);
    auto gateway = make_gateway(s.config);
    auto embedder = make_embedder(s.config);

    Dataset dataset;
    if (!opt.input_path.empty()) {
        dataset = dataset_from_artifact(read_artifact(opt.input_path));
        inputs["input"] = file_sha256(opt.input_path);
    } else {
        dataset = dataset_from_artifact(s.read_checked("dataset.jsonl", inputs));
    }

    Dataset pool;
    pool.samples = dataset.split(s.config.match.pool_split);
    std::vector<PipelineInput> targets;
    for (const auto& sample : dataset.samples) {
        if (s.config.match.target_split.empty() || sample.split == s.config.match.target_split) {
            targets.push_back({sample.id, sample.text});
        }
    }

    const VectorIndex selected_index = restrict_index(index, selected);
    MatcherContext ctx{selected,
                       selected_index,
                       *embedder,
                       *gateway,
                       s.config.match.matcher,
                       SeededRng(derive_seed(s.config.master_seed, 3, "match")),
                       pool.samples.empty() ? nullptr : &pool};

    const auto predictions = run_pipeline(targets, ctx);
    gateway->flush();
    flush_embedder(embedder);

    std::vector<Json> records;
    records.reserve(predictions.size());
    for (const auto& p : predictions) records.push_back(prediction_to_json(p));
    write_artifact(s.path("predictions.jsonl"), ArtifactHeader{"match", s.config_hash, inputs},
                   records);
    std::cout << "match: " << predictions.size() << " samples predicted\n";
    return 0;
}

int cmd_metrics(const CommandOptions& opt) {
    Stage s = open_stage(opt);
    std::map<std::string, std::string> inputs;
    const Taxonomy universe = universe_from_artifact(s.read_checked("taxonomy.jsonl", inputs));
    const Dataset dataset = dataset_from_artifact(s.read_checked("dataset.jsonl", inputs));
    auto gateway = make_gateway(s.config);
    auto embedder = make_embedder(s.config);

    const QualityReport report = quality_report(dataset, universe, *gateway, *embedder);
    const auto stats = dataset_stats(dataset);
    gateway->flush();
    flush_embedder(embedder);

    Json body = quality_report_to_json(report);
    body["dataset_stats"] = stats_to_json(stats);
    write_report(s.path("quality.json"), ArtifactHeader{"metrics", s.config_hash, inputs}, body);

    std::cout << quality_report_table(report) << "\n" << stats_table(stats);
    return 0;
}

int cmd_evaluate(const CommandOptions& opt) {
    Stage s = open_stage(opt);
    std::map<std::string, std::string> inputs;

    const std::string preds_path = opt.preds_path.empty() ? s.path("predictions.jsonl") : opt.preds_path;
    const std::string gold_path = opt.gold_path.empty() ? s.path("dataset.jsonl") : opt.gold_path;
    const Artifact preds_artifact = read_artifact(preds_path);
    const Artifact gold_artifact = read_artifact(gold_path);
    inputs["predictions"] = file_sha256(preds_path);
    inputs["gold"] = file_sha256(gold_path);

    Dataset gold = dataset_from_artifact(gold_artifact);
    std::vector<PredRecord> preds;
    preds.reserve(preds_artifact.records.size());
    for (const Json& rec : preds_artifact.records) preds.push_back(pred_record_from_json(rec));

    // Predictions may cover only one split; evaluate against those samples.
    std::set<std::string> predicted_ids;
    for (const auto& p : preds) predicted_ids.insert(p.id);
    Dataset scope;
    for (const auto& sample : gold.samples) {
        if (predicted_ids.count(sample.id)) scope.samples.push_back(sample);
    }
    if (scope.samples.empty()) scope = gold;

    const F1Report overall = micro_f1(preds, scope);
    const StratifiedReport strata = length_stratified_eval(preds, scope);

    // Span overlap when both sides carry spans.
    std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> span_pairs;
    for (const Json& rec : preds_artifact.records) {
        const PredictionRecord full = prediction_from_json(rec);
        const Sample* sample = scope.find(full.id);
        if (!sample) continue;
        std::vector<std::string> pred_surfaces;
        for (const auto& sp : full.spans) pred_surfaces.push_back(sp.span.surface);
        std::vector<std::string> gold_surfaces;
        for (const auto& sp : sample->spans) gold_surfaces.push_back(sp.surface);
        if (!pred_surfaces.empty() || !gold_surfaces.empty()) {
            span_pairs.emplace_back(std::move(pred_surfaces), std::move(gold_surfaces));
        }
    }

    Json body{{"micro_f1", f1_to_json(overall)}};
    if (strata.short_side) body["short"] = f1_to_json(*strata.short_side);
    if (strata.long_side) body["long"] = f1_to_json(*strata.long_side);
    if (!span_pairs.empty()) body["span_eval"] = span_eval_to_json(span_eval(span_pairs));
    write_report(s.path("evaluation.json"), ArtifactHeader{"evaluate", s.config_hash, inputs}, body);

    std::cout << f1_table(overall);
    return 0;
}

int run_stage(const std::string& stage, const CommandOptions& opt,
              int (*command)(const CommandOptions&)) {
    try {
        return command(opt);
    } catch (const std::exception& e) {
        const Json report{{"stage", stage}, {"error", e.what()}};
        try {
            fs::create_directories(opt.out_dir.empty() ? "." : opt.out_dir);
            write_file((fs::path(opt.out_dir.empty() ? "." : opt.out_dir) / "error_report.json").string(),
                       report.dump(2) + "\n");
        } catch (...) {
            // the stderr line below still reports the failure
        }
        std::cerr << "error [" << stage << "]: " << e.what() << "\n";
        return 2;
    }
}

} // namespace skillforge
