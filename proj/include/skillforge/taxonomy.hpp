#pragma once

#include "skillforge/jsonl.hpp"

#include <map>
#include <string>
#include <vector>

namespace skillforge {

struct SkillEntry {
    std::string id;          // taxonomy URI, unique
    std::string name;        // preferred label
    std::string definition;
    std::vector<std::string> alt_labels; // synonyms; deduped, never contains name
    std::string group;
};

// Immutable after load. Iteration is sorted by id.
class Taxonomy {
public:
    Taxonomy() = default;
    explicit Taxonomy(std::vector<SkillEntry> entries, std::string note = "");

    const SkillEntry& at(const std::string& id) const;
    bool contains(const std::string& id) const { return entries_.count(id) > 0; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    std::vector<std::string> ids() const;
    const std::map<std::string, SkillEntry>& entries() const { return entries_; }

    const std::string& label_space_note() const { return note_; }

private:
    std::map<std::string, SkillEntry> entries_;
    std::string note_;
};

struct TableFormat {
    char delimiter = ',';
    std::string id_column = "id";
    std::string name_column = "name";
    std::string definition_column = "definition";
    std::string alt_labels_column = "alt_labels";
    std::string group_column = "group";
    std::string alt_label_separator = "|"; // separator inside the alt-labels cell
};

// Delimiter-separated file with a header row; quoted cells allowed.
Taxonomy load_taxonomy(const std::string& path, const TableFormat& format);

Taxonomy subset(const Taxonomy& t, const std::vector<std::string>& ids);
Taxonomy complement(const Taxonomy& universe, const Taxonomy& selected);

// "{name}: {definition}", or name alone when the definition is empty.
std::string render_entry(const SkillEntry& e);

// Taxonomy artifact records: {id, name, definition, alt_labels, group}.
Json entry_to_json(const SkillEntry& e);
SkillEntry entry_from_json(const Json& j);

} // namespace skillforge
