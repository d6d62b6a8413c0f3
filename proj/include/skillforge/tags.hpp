#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace skillforge {

// Half-open character span; surface always equals the host text's
// [start, end) slice.
struct TaggedSpan {
    std::size_t start = 0;
    std::size_t end = 0;
    std::string surface;
    std::string label; // skill id or UNK; empty when not yet assigned
};

enum class TagParseStatus {
    ok,
    unbalanced, // missing/extra/mismatched @@ ## delimiters
    drift,      // de-tagged text differs from the original beyond whitespace
};

struct TagParse {
    TagParseStatus status = TagParseStatus::ok;
    std::vector<TaggedSpan> spans;
    std::string detagged;
    std::size_t divergence_offset = 0; // first differing offset, drift only
    std::string message;
};

// Spans between @@ and ##, mapped back to `original` by sequential
// left-to-right search; de-tagged text must equal `original` up to
// whitespace. No exceptions; status carries the failure kind.
TagParse try_parse_tags(const std::string& tagged_text, const std::string& original);

// Same, but spans index into the reply's own de-tagged text. Used for
// extraction replies, which are allowed to rewrite the input.
TagParse try_parse_tags(const std::string& tagged_text);

// Throwing wrapper over the strict form.
std::vector<TaggedSpan> parse_tags(const std::string& tagged_text, const std::string& original);

std::string detag(const std::string& tagged_text);

// Inverse of parsing: wrap each span with @@ ##. Overlapping spans are
// rendered once, widest-first.
std::string render_tagged(const std::string& text, const std::vector<TaggedSpan>& spans);

} // namespace skillforge
