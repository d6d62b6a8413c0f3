#pragma once

#include "skillforge/jsonl.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace skillforge {

// Every stage artifact starts with a header line carrying the producing
// config hash and the content ids of its inputs; a .manifest.json sidecar
// repeats them plus the artifact's own content id.
struct ArtifactHeader {
    std::string stage;
    std::string config_hash;
    std::map<std::string, std::string> inputs; // logical name -> sha256
};

struct Artifact {
    std::optional<ArtifactHeader> header;
    std::vector<Json> records;
};

Json header_to_json(const ArtifactHeader& h);

// Reads a JSONL file, splitting off the header line when present. Plain
// files from external systems simply have no header.
Artifact read_artifact(const std::string& path);

// Header check used by downstream stages: a mismatched upstream config hash
// is an error unless forced.
void require_config_hash(const Artifact& artifact, const std::string& path,
                         const std::string& expected_hash, bool force);

// Writes header + records, then the sidecar manifest with the output hash.
void write_artifact(const std::string& path, const ArtifactHeader& header,
                    const std::vector<Json>& records);

// Same provenance scheme for single-object JSON reports.
void write_report(const std::string& path, const ArtifactHeader& header, const Json& body);

std::string file_sha256(const std::string& path);

} // namespace skillforge
