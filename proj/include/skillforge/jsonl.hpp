#pragma once

#include "json.hpp"

#include <string>
#include <vector>

namespace skillforge {

using Json = nlohmann::json;

std::vector<Json> read_jsonl(const std::string& path);
void write_jsonl(const std::string& path, const std::vector<Json>& records);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace skillforge
