#include "skillforge/taxonomy.hpp"

#include "skillforge/common.hpp"
#include "skillforge/text.hpp"

#include <algorithm>
#include <fstream>
#include <set>

namespace skillforge {

namespace {

// One record per call; cells may be quoted and contain delimiters or newlines.
bool read_csv_record(std::istream& in, char delimiter, std::vector<std::string>& out) {
    out.clear();
    std::string cell;
    bool in_quotes = false;
    bool saw_any = false;
    int c;
    while ((c = in.get()) != EOF) {
        saw_any = true;
        const char ch = static_cast<char>(c);
        if (in_quotes) {
            if (ch == '"') {
                if (in.peek() == '"') {
                    cell.push_back('"');
                    in.get();
                } else {
                    in_quotes = false;
                }
            } else {
                cell.push_back(ch);
            }
        } else if (ch == '"') {
            in_quotes = true;
        } else if (ch == delimiter) {
            out.push_back(cell);
            cell.clear();
        } else if (ch == '\n') {
            break;
        } else if (ch == '\r') {
            // swallow; \r\n handled by the \n branch
        } else {
            cell.push_back(ch);
        }
    }
    if (!saw_any) return false;
    out.push_back(cell);
    return true;
}

std::vector<std::string> split_alt_labels(const std::string& cell, const std::string& sep) {
    std::vector<std::string> labels;
    if (sep.empty()) {
        const std::string one = trim(cell);
        if (!one.empty()) labels.push_back(one);
        return labels;
    }
    std::size_t pos = 0;
    while (pos <= cell.size()) {
        const std::size_t hit = cell.find(sep, pos);
        const std::string piece =
            trim(cell.substr(pos, hit == std::string::npos ? std::string::npos : hit - pos));
        if (!piece.empty()) labels.push_back(piece);
        if (hit == std::string::npos) break;
        pos = hit + sep.size();
    }
    return labels;
}

} // namespace

Taxonomy::Taxonomy(std::vector<SkillEntry> entries, std::string note) : note_(std::move(note)) {
    for (auto& e : entries) {
        if (e.id.empty()) throw Error("taxonomy entry with empty id");
        if (e.name.empty()) throw Error("taxonomy entry " + e.id + " has empty name");
        // Enforce alt-label invariants: unique, never the preferred name.
        std::vector<std::string> alts;
        std::set<std::string> seen;
        for (const auto& a : e.alt_labels) {
            if (a.empty() || a == e.name || !seen.insert(a).second) continue;
            alts.push_back(a);
        }
        e.alt_labels = std::move(alts);
        const std::string id = e.id;
        if (!entries_.emplace(id, std::move(e)).second) {
            throw Error("duplicate taxonomy id: " + id);
        }
    }
}

const SkillEntry& Taxonomy::at(const std::string& id) const {
    auto it = entries_.find(id);
    if (it == entries_.end()) throw Error("unknown taxonomy id: " + id);
    return it->second;
}

std::vector<std::string> Taxonomy::ids() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& [id, _] : entries_) out.push_back(id);
    return out;
}

Taxonomy load_taxonomy(const std::string& path, const TableFormat& format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("taxonomy file not found: " + path);

    std::vector<std::string> header;
    if (!read_csv_record(in, format.delimiter, header)) throw Error("empty taxonomy file: " + path);

    auto column = [&](const std::string& name, bool required) -> long {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) {
            if (required) throw Error("missing required column '" + name + "' in " + path);
            return -1;
        }
        return it - header.begin();
    };
    const long id_col = column(format.id_column, true);
    const long name_col = column(format.name_column, true);
    const long def_col = column(format.definition_column, false);
    const long alt_col = column(format.alt_labels_column, false);
    const long group_col = column(format.group_column, false);

    auto cell = [](const std::vector<std::string>& row, long idx) -> std::string {
        if (idx < 0 || static_cast<std::size_t>(idx) >= row.size()) return "";
        return row[static_cast<std::size_t>(idx)];
    };

    std::vector<SkillEntry> entries;
    std::set<std::string> ids_seen;
    std::vector<std::string> row;
    while (read_csv_record(in, format.delimiter, row)) {
        if (row.size() == 1 && trim(row[0]).empty()) continue;
        SkillEntry e;
        e.id = trim(cell(row, id_col));
        e.name = trim(cell(row, name_col));
        e.definition = trim(cell(row, def_col));
        e.group = trim(cell(row, group_col));
        e.alt_labels = split_alt_labels(cell(row, alt_col), format.alt_label_separator);
        if (!ids_seen.insert(e.id).second) throw Error("duplicate taxonomy id: " + e.id);
        entries.push_back(std::move(e));
    }
    return Taxonomy(std::move(entries), path);
}

Taxonomy subset(const Taxonomy& t, const std::vector<std::string>& ids) {
    std::vector<SkillEntry> entries;
    std::set<std::string> taken;
    for (const auto& id : ids) {
        if (!taken.insert(id).second) continue;
        entries.push_back(t.at(id)); // throws naming the id when unknown
    }
    return Taxonomy(std::move(entries), t.label_space_note());
}

Taxonomy complement(const Taxonomy& universe, const Taxonomy& selected) {
    for (const auto& [id, _] : selected.entries()) {
        if (!universe.contains(id)) throw Error("selected id outside universe: " + id);
    }
    std::vector<SkillEntry> entries;
    for (const auto& [id, e] : universe.entries()) {
        if (!selected.contains(id)) entries.push_back(e);
    }
    return Taxonomy(std::move(entries), universe.label_space_note());
}

std::string render_entry(const SkillEntry& e) {
    if (e.definition.empty()) return e.name;
    return e.name + ": " + e.definition;
}

Json entry_to_json(const SkillEntry& e) {
    return Json{{"id", e.id},
                {"name", e.name},
                {"definition", e.definition},
                {"alt_labels", e.alt_labels},
                {"group", e.group}};
}

SkillEntry entry_from_json(const Json& j) {
    SkillEntry e;
    e.id = j.at("id").get<std::string>();
    e.name = j.at("name").get<std::string>();
    e.definition = j.value("definition", "");
    e.group = j.value("group", "");
    if (j.contains("alt_labels")) e.alt_labels = j.at("alt_labels").get<std::vector<std::string>>();
    return e;
}

} // namespace skillforge
