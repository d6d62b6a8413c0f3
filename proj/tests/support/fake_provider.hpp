#pragma once

#include "skillforge/llm_gateway.hpp"
#include "skillforge/taxonomy.hpp"

#include <memory>
#include <string>
#include <vector>

namespace skillforge::testing {

// Deterministic stand-in for the chat and scoring endpoints. Replies are a
// pure function of the request, so recording a cassette against it and
// replaying later is stable. It knows the taxonomy renders so generated
// sentences embed recognizable skill phrases and the extraction handler can
// tag them again.
class FakeProvider {
public:
    explicit FakeProvider(const Taxonomy& taxonomy);

    std::string chat(const ChatRequest& req) const;
    ScoreResponse score(const std::string& model, const std::string& text) const;

    std::unique_ptr<ScriptedTransport> transport() const;

private:
    struct Phrase {
        std::string name;
        std::string phrase; // "name definition" with punctuation dropped
    };
    std::vector<Phrase> phrases_; // longest first for greedy tagging

    std::string handle_positive(const std::string& instruction) const;
    std::string handle_noskill(const std::string& instruction, bool perks) const;
    std::string handle_extraction(const std::string& instruction) const;
    std::string handle_span_tag(const ChatRequest& req) const;
    std::string handle_matching(const std::string& instruction) const;
};

} // namespace skillforge::testing
