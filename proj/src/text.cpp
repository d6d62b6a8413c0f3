#include "skillforge/text.hpp"

#include <algorithm>
#include <cctype>

namespace skillforge {

bool is_space_char(char c) {
    return std::isspace(static_cast<unsigned char>(c)) != 0;
}

bool is_alnum_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && is_space_char(s[b])) ++b;
    while (e > b && is_space_char(s[e - 1])) --e;
    return std::string(s.substr(b, e - b));
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::vector<std::string> tokenize_alnum(std::string_view s) {
    std::vector<std::string> tokens;
    std::string cur;
    for (char c : s) {
        if (is_alnum_char(c)) {
            cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        } else if (!cur.empty()) {
            tokens.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    return tokens;
}

std::vector<std::string> split_whitespace(std::string_view s) {
    std::vector<std::string> tokens;
    std::string cur;
    for (char c : s) {
        if (is_space_char(c)) {
            if (!cur.empty()) {
                tokens.push_back(std::move(cur));
                cur.clear();
            }
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    return tokens;
}

std::string normalize_whitespace(std::string_view s) {
    return join(split_whitespace(s), " ");
}

bool contains_ci(std::string_view haystack, std::string_view needle) {
    if (needle.empty()) return true;
    const std::string h = to_lower(haystack);
    const std::string n = to_lower(needle);
    return h.find(n) != std::string::npos;
}

std::optional<std::pair<std::size_t, std::size_t>>
find_flexible(std::string_view haystack, std::string_view needle, std::size_t from) {
    const std::string n = normalize_whitespace(needle);
    if (n.empty()) return std::nullopt;
    for (std::size_t start = from; start < haystack.size(); ++start) {
        if (haystack[start] != n[0]) continue;
        std::size_t hi = start;
        std::size_t ni = 0;
        bool ok = true;
        while (ni < n.size()) {
            if (n[ni] == ' ') {
                if (hi >= haystack.size() || !is_space_char(haystack[hi])) {
                    ok = false;
                    break;
                }
                while (hi < haystack.size() && is_space_char(haystack[hi])) ++hi;
                ++ni;
            } else {
                if (hi >= haystack.size() || haystack[hi] != n[ni]) {
                    ok = false;
                    break;
                }
                ++hi;
                ++ni;
            }
        }
        if (ok) return std::make_pair(start, hi);
    }
    return std::nullopt;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) out.append(sep);
        out.append(parts[i]);
    }
    return out;
}

std::string substitute(std::string_view tmpl, std::string_view placeholder, std::string_view value) {
    std::string out;
    std::size_t pos = 0;
    while (pos < tmpl.size()) {
        std::size_t hit = tmpl.find(placeholder, pos);
        if (hit == std::string_view::npos) {
            out.append(tmpl.substr(pos));
            break;
        }
        out.append(tmpl.substr(pos, hit - pos));
        out.append(value);
        pos = hit + placeholder.size();
    }
    return out;
}

std::vector<std::string> split_enumerated(std::string_view reply) {
    std::vector<std::string> items;
    std::size_t pos = 0;
    while (pos <= reply.size()) {
        std::size_t nl = reply.find('\n', pos);
        std::string_view line = reply.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        std::string item = trim(line);
        // Strip "12." / "12)" / "-" / "*" markers.
        std::size_t i = 0;
        while (i < item.size() && std::isdigit(static_cast<unsigned char>(item[i]))) ++i;
        if (i > 0 && i < item.size() && (item[i] == '.' || item[i] == ')')) {
            item = trim(item.substr(i + 1));
        } else if (!item.empty() && (item[0] == '-' || item[0] == '*')) {
            item = trim(item.substr(1));
        }
        if (!item.empty()) items.push_back(std::move(item));
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    return items;
}

} // namespace skillforge
