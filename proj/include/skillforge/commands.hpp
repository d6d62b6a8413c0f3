#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace skillforge {

// Shared flags for every subcommand; per-stage inputs where relevant.
struct CommandOptions {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<std::string> cassette;
    std::optional<std::string> mode; // live | record | replay
    bool force = false;

    std::string preds_path; // evaluate
    std::string gold_path;  // evaluate
    std::string input_path; // match: sentences/dataset override
};

// Stage entry points: return 0 on success. Errors are reported by throwing;
// the CLI wrapper turns them into exit code 2 plus an error report file.
int cmd_ingest(const CommandOptions& opt);
int cmd_embed_taxonomy(const CommandOptions& opt);
int cmd_popularity(const CommandOptions& opt);
int cmd_combine(const CommandOptions& opt);
int cmd_generate(const CommandOptions& opt);
int cmd_refine(const CommandOptions& opt);
int cmd_split(const CommandOptions& opt);
int cmd_match(const CommandOptions& opt);
int cmd_metrics(const CommandOptions& opt);
int cmd_evaluate(const CommandOptions& opt);

// Wrapper used by main(): catches stage failures, writes
// <out_dir>/error_report.json, and maps them to exit code 2.
int run_stage(const std::string& stage, const CommandOptions& opt, int (*command)(const CommandOptions&));

} // namespace skillforge
