#include "skillforge/tags.hpp"

#include "skillforge/common.hpp"
#include "skillforge/text.hpp"

#include <algorithm>
#include <sstream>

namespace skillforge {

namespace {

constexpr const char* kOpen = "@@";
constexpr const char* kClose = "##";

struct RawScan {
    bool balanced = true;
    std::string detagged;
    std::vector<TaggedSpan> spans; // offsets into detagged
    std::string message;
};

RawScan scan(const std::string& tagged) {
    RawScan out;
    bool open = false;
    std::size_t span_start = 0;
    std::size_t i = 0;
    while (i < tagged.size()) {
        if (tagged.compare(i, 2, kOpen) == 0) {
            if (open) {
                out.balanced = false;
                out.message = "nested or repeated @@ before a closing ## at offset " + std::to_string(i);
                return out;
            }
            open = true;
            span_start = out.detagged.size();
            i += 2;
        } else if (tagged.compare(i, 2, kClose) == 0) {
            if (!open) {
                out.balanced = false;
                out.message = "## without a matching @@ at offset " + std::to_string(i);
                return out;
            }
            open = false;
            TaggedSpan span;
            span.start = span_start;
            span.end = out.detagged.size();
            // Trim edge whitespace into the offsets.
            while (span.start < span.end && is_space_char(out.detagged[span.start])) ++span.start;
            while (span.end > span.start && is_space_char(out.detagged[span.end - 1])) --span.end;
            if (span.end > span.start) {
                span.surface = out.detagged.substr(span.start, span.end - span.start);
                out.spans.push_back(std::move(span));
            }
            i += 2;
        } else {
            out.detagged.push_back(tagged[i]);
            ++i;
        }
    }
    if (open) {
        out.balanced = false;
        out.message = "@@ opened but never closed with ##";
    }
    return out;
}

} // namespace

TagParse try_parse_tags(const std::string& tagged_text) {
    TagParse result;
    RawScan raw = scan(tagged_text);
    result.detagged = raw.detagged;
    if (!raw.balanced) {
        result.status = TagParseStatus::unbalanced;
        result.message = raw.message;
        return result;
    }
    result.spans = std::move(raw.spans);
    return result;
}

TagParse try_parse_tags(const std::string& tagged_text, const std::string& original) {
    TagParse result;
    RawScan raw = scan(tagged_text);
    result.detagged = raw.detagged;
    if (!raw.balanced) {
        result.status = TagParseStatus::unbalanced;
        result.message = raw.message;
        return result;
    }

    const std::string norm_detag = normalize_whitespace(raw.detagged);
    const std::string norm_orig = normalize_whitespace(original);
    if (norm_detag != norm_orig) {
        std::size_t d = 0;
        while (d < norm_detag.size() && d < norm_orig.size() && norm_detag[d] == norm_orig[d]) ++d;
        result.status = TagParseStatus::drift;
        result.divergence_offset = d;
        std::ostringstream msg;
        msg << "rewrite drift: de-tagged text diverges from the original at offset " << d << " ('"
            << norm_detag.substr(d, 20) << "' vs '" << norm_orig.substr(d, 20) << "')";
        result.message = msg.str();
        return result;
    }

    // Map spans onto the original, consuming it left to right.
    std::size_t cursor = 0;
    for (const TaggedSpan& span : raw.spans) {
        auto hit = find_flexible(original, span.surface, cursor);
        if (!hit) {
            // Equality up to whitespace guarantees the surfaces appear in
            // order, so a failed lookup is still drift.
            result.status = TagParseStatus::drift;
            result.message = "span '" + span.surface + "' not found in the original text";
            result.spans.clear();
            return result;
        }
        TaggedSpan mapped;
        mapped.start = hit->first;
        mapped.end = hit->second;
        mapped.surface = original.substr(mapped.start, mapped.end - mapped.start);
        mapped.label = span.label;
        result.spans.push_back(std::move(mapped));
        cursor = hit->second;
    }
    return result;
}

std::vector<TaggedSpan> parse_tags(const std::string& tagged_text, const std::string& original) {
    TagParse result = try_parse_tags(tagged_text, original);
    if (result.status != TagParseStatus::ok) throw Error("parse_tags: " + result.message);
    return result.spans;
}

std::string detag(const std::string& tagged_text) {
    return scan(tagged_text).detagged;
}

std::string render_tagged(const std::string& text, const std::vector<TaggedSpan>& spans) {
    std::vector<TaggedSpan> ordered = spans;
    std::sort(ordered.begin(), ordered.end(), [](const TaggedSpan& a, const TaggedSpan& b) {
        if (a.start != b.start) return a.start < b.start;
        return a.end > b.end; // widest first among same-start spans
    });
    std::string out;
    std::size_t pos = 0;
    for (const TaggedSpan& span : ordered) {
        if (span.start < pos || span.end > text.size() || span.start >= span.end) continue;
        out.append(text, pos, span.start - pos);
        out.append(kOpen);
        out.append(text, span.start, span.end - span.start);
        out.append(kClose);
        pos = span.end;
    }
    out.append(text, pos, text.size() - pos);
    return out;
}

} // namespace skillforge
