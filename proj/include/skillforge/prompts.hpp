#pragma once

#include <string>
#include <vector>

namespace skillforge::prompts {

// Skill extraction (tag skills with @@ ##).
extern const std::string kExtractionSystem;
extern const std::string kExtractionInstruction;

struct Demonstration {
    std::string sentence;
    std::string answer;
};

// Hardcoded extraction demonstrations used when no retrieval pool is given.
const std::vector<Demonstration>& fixed_extraction_demos();

// Candidate matching (pick the lettered option).
extern const std::string kMatchingSystem;
extern const std::string kMatchingInstruction;
extern const std::string kFixedMatchingDemo;

// Positive sample generation.
extern const std::string kPositiveSystem;
// {skillList} and {wordsToAvoid} placeholders; dense asks for one sentence,
// sparse for a multi-sentence paragraph.
extern const std::string kPositiveInstructionDense;
extern const std::string kPositiveInstructionSparse;

// No-skill negative generation; {nExamples} placeholder.
extern const std::string kCompanySystem;
extern const std::string kCompanyInstruction;
extern const std::string kPerksSystem;
extern const std::string kPerksInstruction;

// Span tagging for one known skill.
extern const std::string kSpanTagSystem;
extern const std::string kSpanTagInstruction;

// Self-correction feedback messages.
extern const std::string kCorrectionBadDelimiters;
extern const std::string kCorrectionNothingHighlighted;

} // namespace skillforge::prompts
