#include "skillforge/manifest.hpp"

#include "skillforge/common.hpp"
#include "skillforge/hashing.hpp"

namespace skillforge {

Json header_to_json(const ArtifactHeader& h) {
    return Json{{"artifact", h.stage}, {"config_hash", h.config_hash}, {"inputs", h.inputs}};
}

Artifact read_artifact(const std::string& path) {
    Artifact out;
    std::vector<Json> lines = read_jsonl(path);
    std::size_t start = 0;
    if (!lines.empty() && lines[0].is_object() && lines[0].contains("artifact")) {
        ArtifactHeader h;
        h.stage = lines[0].at("artifact").get<std::string>();
        h.config_hash = lines[0].value("config_hash", "");
        if (lines[0].contains("inputs")) {
            h.inputs = lines[0].at("inputs").get<std::map<std::string, std::string>>();
        }
        out.header = std::move(h);
        start = 1;
    }
    out.records.assign(lines.begin() + static_cast<long>(start), lines.end());
    return out;
}

void require_config_hash(const Artifact& artifact, const std::string& path,
                         const std::string& expected_hash, bool force) {
    if (force || !artifact.header) return;
    if (artifact.header->config_hash != expected_hash) {
        throw Error(path + " was produced with config hash " + artifact.header->config_hash +
                    " but the current config hashes to " + expected_hash +
                    "; pass --force to accept the mismatch");
    }
}

void write_artifact(const std::string& path, const ArtifactHeader& header,
                    const std::vector<Json>& records) {
    std::vector<Json> lines;
    lines.reserve(records.size() + 1);
    lines.push_back(header_to_json(header));
    lines.insert(lines.end(), records.begin(), records.end());
    write_jsonl(path, lines);

    const Json manifest{{"stage", header.stage},
                        {"config_hash", header.config_hash},
                        {"inputs", header.inputs},
                        {"output_sha256", file_sha256(path)}};
    write_file(path + ".manifest.json", manifest.dump(2) + "\n");
}

void write_report(const std::string& path, const ArtifactHeader& header, const Json& body) {
    Json doc = header_to_json(header);
    doc["report"] = body;
    write_file(path, doc.dump(2) + "\n");

    const Json manifest{{"stage", header.stage},
                        {"config_hash", header.config_hash},
                        {"inputs", header.inputs},
                        {"output_sha256", file_sha256(path)}};
    write_file(path + ".manifest.json", manifest.dump(2) + "\n");
}

std::string file_sha256(const std::string& path) {
    return sha256_hex(read_file(path));
}

} // namespace skillforge
