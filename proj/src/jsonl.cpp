#include "skillforge/jsonl.hpp"

#include "skillforge/common.hpp"

#include <fstream>
#include <sstream>

namespace skillforge {

std::vector<Json> read_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::vector<Json> records;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            records.push_back(Json::parse(line));
        } catch (const std::exception& e) {
            throw Error(path + ":" + std::to_string(lineno) + ": bad JSON: " + e.what());
        }
    }
    return records;
}

void write_jsonl(const std::string& path, const std::vector<Json>& records) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path);
    for (const Json& rec : records) {
        out << rec.dump() << '\n';
    }
    if (!out) throw Error("write failed for " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path);
    out << content;
    if (!out) throw Error("write failed for " + path);
}

} // namespace skillforge
