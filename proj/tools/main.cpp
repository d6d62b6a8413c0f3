// Batch pipeline driver: each subcommand consumes the JSONL artifacts of its
// predecessors and writes one artifact plus a provenance manifest.

#include "skillforge/commands.hpp"

#include "CLI11.hpp"

#include <functional>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    CLI::App app{"synthetic job-posting dataset builder and skill-matching toolkit"};
    app.require_subcommand(1);

    skillforge::CommandOptions opt;

    struct StageDef {
        const char* name;
        const char* help;
        int (*fn)(const skillforge::CommandOptions&);
    };
    const std::vector<StageDef> stages = {
        {"ingest", "load the taxonomy file into the canonical artifact", skillforge::cmd_ingest},
        {"embed-taxonomy", "embed every rendered taxonomy entry", skillforge::cmd_embed_taxonomy},
        {"popularity", "score skill popularity with the sequence scorer", skillforge::cmd_popularity},
        {"combine", "sample skill combinations", skillforge::cmd_combine},
        {"generate", "generate positive and negative samples", skillforge::cmd_generate},
        {"refine", "self-refine labels and tag spans", skillforge::cmd_refine},
        {"split", "assemble the train/dev/test dataset", skillforge::cmd_split},
        {"match", "run the extraction-and-matching pipeline", skillforge::cmd_match},
        {"metrics", "offline dataset quality metrics", skillforge::cmd_metrics},
        {"evaluate", "score predictions against gold labels", skillforge::cmd_evaluate},
    };

    std::string stage_name;
    int (*stage_fn)(const skillforge::CommandOptions&) = nullptr;

    for (const auto& def : stages) {
        CLI::App* sub = app.add_subcommand(def.name, def.help);
        sub->add_option("--config", opt.config_path, "run configuration JSON")->required();
        sub->add_option("--out-dir", opt.out_dir, "artifact directory (default .)");
        sub->add_option("--seed", [&opt](const std::vector<std::string>& vals) {
            opt.seed = std::stoull(vals.at(0));
            return true;
        }, "override the master rng seed")->expected(1);
        sub->add_option("--cassette", [&opt](const std::vector<std::string>& vals) {
            opt.cassette = vals.at(0);
            return true;
        }, "override the cassette path")->expected(1);
        sub->add_option("--mode", [&opt](const std::vector<std::string>& vals) {
            opt.mode = vals.at(0);
            return true;
        }, "live | record | replay")->expected(1)
            ->check(CLI::IsMember({"live", "record", "replay"}));
        sub->add_flag("--force", opt.force, "accept mismatched upstream config hashes");
        if (std::string(def.name) == "evaluate") {
            sub->add_option("--preds", opt.preds_path, "predictions JSONL");
            sub->add_option("--gold", opt.gold_path, "gold dataset JSONL");
        }
        if (std::string(def.name) == "match") {
            sub->add_option("--input", opt.input_path, "dataset JSONL to match instead of dataset.jsonl");
        }
        sub->callback([&stage_name, &stage_fn, def] {
            stage_name = def.name;
            stage_fn = def.fn;
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // 0 for --help, 1 for any usage problem.
        return app.exit(e) == 0 ? 0 : 1;
    }
    return skillforge::run_stage(stage_name, opt, stage_fn);
}
