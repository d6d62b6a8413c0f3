#include "skillforge/dataset.hpp"

#include "skillforge/common.hpp"

#include <algorithm>

namespace skillforge {

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::dense: return "dense";
        case Provenance::sparse: return "sparse";
        case Provenance::negative_unknown: return "negative_unknown";
        case Provenance::negative_company: return "negative_company";
        case Provenance::negative_perks: return "negative_perks";
    }
    throw Error("bad provenance value");
}

Provenance provenance_from_string(const std::string& s) {
    if (s == "dense") return Provenance::dense;
    if (s == "sparse") return Provenance::sparse;
    if (s == "negative_unknown") return Provenance::negative_unknown;
    if (s == "negative_company") return Provenance::negative_company;
    if (s == "negative_perks") return Provenance::negative_perks;
    throw Error("unknown provenance: " + s);
}

bool is_positive(Provenance p) {
    return p == Provenance::dense || p == Provenance::sparse;
}

void RawSample::check_invariants() const {
    if (text.empty()) throw Error("sample " + id + ": empty text");
    switch (provenance) {
        case Provenance::dense:
            if (source_combination && source_combination->size() > 4) {
                throw Error("sample " + id + ": dense provenance with combination size > 4");
            }
            break;
        case Provenance::sparse:
            if (source_combination && source_combination->size() < 5) {
                throw Error("sample " + id + ": sparse provenance with combination size < 5");
            }
            break;
        case Provenance::negative_company:
        case Provenance::negative_perks:
            if (!gold_labels.empty()) {
                throw Error("sample " + id + ": no-skill negative must carry no labels");
            }
            break;
        case Provenance::negative_unknown:
            if (gold_labels != std::vector<std::string>{kUnkLabel}) {
                throw Error("sample " + id + ": unknown-skill negative must be labeled UNK");
            }
            break;
    }
}

std::vector<Sample> Dataset::split(const std::string& name) const {
    std::vector<Sample> out;
    for (const auto& s : samples) {
        if (s.split == name) out.push_back(s);
    }
    return out;
}

const Sample* Dataset::find(const std::string& id) const {
    for (const auto& s : samples) {
        if (s.id == id) return &s;
    }
    return nullptr;
}

std::vector<std::string> labels_to_wire(const std::vector<std::string>& labels) {
    if (labels.empty()) return {kNoneLabel};
    return labels;
}

std::vector<std::string> labels_from_wire(const std::vector<std::string>& wire) {
    std::vector<std::string> out;
    for (const auto& l : wire) {
        if (l == kNoneLabel) continue;
        out.push_back(l);
    }
    return out;
}

namespace {

Json spans_to_json(const std::vector<TaggedSpan>& spans) {
    Json arr = Json::array();
    for (const auto& sp : spans) {
        arr.push_back(Json{{"start", sp.start}, {"end", sp.end}, {"label", sp.label}});
    }
    return arr;
}

std::vector<TaggedSpan> spans_from_json(const Json& arr, const std::string& text) {
    std::vector<TaggedSpan> out;
    for (const Json& j : arr) {
        TaggedSpan sp;
        sp.start = j.at("start").get<std::size_t>();
        sp.end = j.at("end").get<std::size_t>();
        sp.label = j.value("label", "");
        if (sp.start >= sp.end || sp.end > text.size()) {
            throw Error("span [" + std::to_string(sp.start) + ", " + std::to_string(sp.end) +
                        ") out of range for text of length " + std::to_string(text.size()));
        }
        sp.surface = text.substr(sp.start, sp.end - sp.start);
        out.push_back(std::move(sp));
    }
    return out;
}

} // namespace

Json raw_sample_to_json(const RawSample& s) {
    Json j{{"id", s.id},
           {"text", s.text},
           {"labels", labels_to_wire(s.gold_labels)},
           {"provenance", to_string(s.provenance)}};
    if (s.source_combination) {
        j["seed"] = s.source_combination->seed;
        j["members"] = s.source_combination->members;
    }
    return j;
}

RawSample raw_sample_from_json(const Json& j) {
    RawSample s;
    s.id = j.at("id").get<std::string>();
    s.text = j.at("text").get<std::string>();
    s.gold_labels = labels_from_wire(j.at("labels").get<std::vector<std::string>>());
    s.provenance = provenance_from_string(j.at("provenance").get<std::string>());
    if (j.contains("seed")) {
        SkillCombination c;
        c.seed = j.at("seed").get<std::string>();
        c.members = j.at("members").get<std::vector<std::string>>();
        c.n_drawn = c.members.size();
        s.source_combination = std::move(c);
    }
    return s;
}

Json refined_to_json(const RefinedSample& s) {
    Json j = raw_sample_to_json(s.base);
    j["final_labels"] = labels_to_wire(s.final_labels);
    j["spans"] = spans_to_json(s.spans);
    j["flagged"] = s.flagged;
    return j;
}

RefinedSample refined_from_json(const Json& j) {
    RefinedSample s;
    s.base = raw_sample_from_json(j);
    s.final_labels = labels_from_wire(j.at("final_labels").get<std::vector<std::string>>());
    s.spans = spans_from_json(j.at("spans"), s.base.text);
    s.flagged = j.value("flagged", false);
    return s;
}

Json sample_to_json(const Sample& s) {
    return Json{{"id", s.id},
                {"split", s.split},
                {"text", s.text},
                {"labels", labels_to_wire(s.labels)},
                {"spans", spans_to_json(s.spans)},
                {"provenance", s.provenance}};
}

Sample sample_from_json(const Json& j) {
    Sample s;
    s.id = j.at("id").get<std::string>();
    s.split = j.value("split", "");
    s.text = j.at("text").get<std::string>();
    s.labels = labels_from_wire(j.at("labels").get<std::vector<std::string>>());
    if (j.contains("spans")) s.spans = spans_from_json(j.at("spans"), s.text);
    s.provenance = j.value("provenance", "");
    return s;
}

Sample sample_from_refined(const RefinedSample& r) {
    Sample s;
    s.id = r.base.id;
    s.text = r.base.text;
    s.labels = r.final_labels;
    s.spans = r.spans;
    s.provenance = to_string(r.base.provenance);
    return s;
}

} // namespace skillforge
