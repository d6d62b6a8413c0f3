#pragma once

#include "skillforge/combigen.hpp"
#include "skillforge/jsonl.hpp"
#include "skillforge/tags.hpp"

#include <optional>
#include <string>
#include <vector>

namespace skillforge {

enum class Provenance { dense, sparse, negative_unknown, negative_company, negative_perks };

std::string to_string(Provenance p);
Provenance provenance_from_string(const std::string& s);
bool is_positive(Provenance p);

// A generated sample before refinement. Empty gold_labels means "no skill"
// (serialized as ["NONE"]); {"UNK"} marks out-of-taxonomy skills.
struct RawSample {
    std::string id;
    std::string text;
    std::vector<std::string> gold_labels;
    Provenance provenance = Provenance::dense;
    std::optional<SkillCombination> source_combination;

    void check_invariants() const; // throws Error on violation
};

struct RefinedSample {
    RawSample base;
    std::vector<TaggedSpan> spans;         // span.label set to a skill id or UNK
    std::vector<std::string> final_labels; // sorted, unique
    bool flagged = false;                  // some refinement step gave up
};

// One dataset row as persisted: {id, split, text, labels, spans, provenance}.
struct Sample {
    std::string id;
    std::string split; // train | dev | test ("" before splitting)
    std::string text;
    std::vector<std::string> labels; // empty = no skill
    std::vector<TaggedSpan> spans;
    std::string provenance;
};

struct Dataset {
    std::vector<Sample> samples;

    std::vector<Sample> split(const std::string& name) const;
    const Sample* find(const std::string& id) const;
};

Json raw_sample_to_json(const RawSample& s);
RawSample raw_sample_from_json(const Json& j);

Json refined_to_json(const RefinedSample& s);
RefinedSample refined_from_json(const Json& j);

Json sample_to_json(const Sample& s);
Sample sample_from_json(const Json& j);

Sample sample_from_refined(const RefinedSample& r);

// Serialized label lists use the literal "NONE" for the empty label set.
std::vector<std::string> labels_to_wire(const std::vector<std::string>& labels);
std::vector<std::string> labels_from_wire(const std::vector<std::string>& wire);

} // namespace skillforge
