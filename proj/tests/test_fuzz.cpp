#include "doctest.h"

#include "skillforge/fuzz.hpp"
#include "skillforge/rng.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <string>
#include <vector>

using namespace skillforge;

namespace {

// Reference oracle, written straight from the definition and kept separate
// from the library code: full-matrix edit distance, then the three-way
// max over (I, X), (I, Y), (X, Y).
std::size_t lev_oracle(const std::string& a, const std::string& b) {
    std::vector<std::vector<std::size_t>> d(a.size() + 1,
                                            std::vector<std::size_t>(b.size() + 1, 0));
    for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
    for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
            d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + cost});
        }
    }
    return d[a.size()][b.size()];
}

int ratio_oracle(const std::string& a, const std::string& b) {
    const std::size_t m = std::max(a.size(), b.size());
    if (m == 0) return 100;
    return static_cast<int>(
        std::lround(100.0 * (1.0 - static_cast<double>(lev_oracle(a, b)) / static_cast<double>(m))));
}

std::set<std::string> token_set(const std::string& s) {
    std::set<std::string> out;
    std::string cur;
    for (char c : s) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        } else if (!cur.empty()) {
            out.insert(cur);
            cur.clear();
        }
    }
    if (!cur.empty()) out.insert(cur);
    return out;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) out += ' ';
        out += tokens[i];
    }
    return out;
}

int token_set_ratio_oracle(const std::string& a, const std::string& b) {
    const auto sa = token_set(a);
    const auto sb = token_set(b);
    std::vector<std::string> inter, da, db;
    std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(inter));
    std::set_difference(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(da));
    std::set_difference(sb.begin(), sb.end(), sa.begin(), sa.end(), std::back_inserter(db));
    const std::string i_str = join_tokens(inter);
    std::string x = i_str;
    if (!da.empty()) x += (x.empty() ? "" : " ") + join_tokens(da);
    std::string y = i_str;
    if (!db.empty()) y += (y.empty() ? "" : " ") + join_tokens(db);
    return std::max({ratio_oracle(i_str, x), ratio_oracle(i_str, y), ratio_oracle(x, y)});
}

} // namespace

TEST_CASE("levenshtein ground truths") {
    CHECK(levenshtein("", "") == 0);
    CHECK(levenshtein("abc", "") == 3);
    CHECK(levenshtein("kitten", "sitting") == 3);
    CHECK(levenshtein("flaw", "lawn") == 2);
    CHECK(levenshtein("abc", "abc") == 0);
}

TEST_CASE("token set ratio basics") {
    CHECK(token_set_ratio("fuzzy wuzzy", "wuzzy fuzzy") == 100);
    CHECK(token_set_ratio("abc", "abc") == 100);
    CHECK(token_set_ratio("", "") == 100);
    CHECK(token_set_ratio("manage databases", "database management systems") ==
          token_set_ratio_oracle("manage databases", "database management systems"));
}

TEST_CASE("token set ratio equals the reference oracle on crafted pairs") {
    const std::vector<std::pair<std::string, std::string>> crafted = {
        {"manage databases", "database management systems"},
        {"SQL", "SQL: query language for databases"},
        {"python programming", "programming in Python"},
        {"data analysis", "statistical data analysis techniques"},
        {"team leadership", "lead teams"},
        {"", "nonempty"},
        {"one", ""},
        {"a b c", "c b a"},
        {"a-b-c", "a b c"},
        {"hello world", "goodbye moon"},
    };
    for (const auto& [a, b] : crafted) {
        CAPTURE(a);
        CAPTURE(b);
        CHECK(token_set_ratio(a, b) == token_set_ratio_oracle(a, b));
    }

    // 40 additional randomized pairs over a small vocabulary.
    const std::vector<std::string> vocab = {"alpha", "beta",  "gamma", "delta", "epsilon",
                                            "zeta",  "eta",   "theta", "data",  "system",
                                            "cloud", "model", "train", "skill", "match"};
    SeededRng rng(99);
    for (int i = 0; i < 40; ++i) {
        auto make = [&] {
            std::string s;
            const std::size_t n = rng.uniform_int(0, 6);
            for (std::size_t w = 0; w < n; ++w) {
                if (!s.empty()) s += rng.uniform_int(0, 3) == 0 ? ", " : " ";
                s += vocab[rng.uniform_int(0, vocab.size() - 1)];
            }
            return s;
        };
        const std::string a = make();
        const std::string b = make();
        CAPTURE(a);
        CAPTURE(b);
        CHECK(token_set_ratio(a, b) == token_set_ratio_oracle(a, b));
    }
}

TEST_CASE("token set ratio symmetry and order invariance") {
    const std::vector<std::pair<std::string, std::string>> pairs = {
        {"manage large databases", "databases manage"},
        {"alpha beta gamma", "gamma beta"},
        {"skill extraction", "extraction of skills"},
    };
    for (const auto& [a, b] : pairs) {
        CHECK(token_set_ratio(a, b) == token_set_ratio(b, a));
    }
    // Token duplication and reordering never change the score.
    CHECK(token_set_ratio("data data analysis", "analysis data") == 100);
    CHECK(token_set_ratio("x y z", "z z y y x x") == 100);
}
