#include "skillforge/fuzz.hpp"

#include "skillforge/text.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

namespace skillforge {

std::size_t levenshtein(std::string_view a, std::string_view b) {
    if (a.size() > b.size()) std::swap(a, b);
    std::vector<std::size_t> prev(a.size() + 1);
    std::vector<std::size_t> cur(a.size() + 1);
    std::iota(prev.begin(), prev.end(), std::size_t{0});
    for (std::size_t j = 1; j <= b.size(); ++j) {
        cur[0] = j;
        for (std::size_t i = 1; i <= a.size(); ++i) {
            const std::size_t sub = prev[i - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[i] = std::min({prev[i] + 1, cur[i - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[a.size()];
}

int levenshtein_ratio(std::string_view a, std::string_view b) {
    const std::size_t longest = std::max(a.size(), b.size());
    if (longest == 0) return 100;
    const double ratio = 1.0 - static_cast<double>(levenshtein(a, b)) / static_cast<double>(longest);
    return static_cast<int>(std::lround(100.0 * ratio));
}

int token_set_ratio(std::string_view a, std::string_view b) {
    const auto ta = tokenize_alnum(a);
    const auto tb = tokenize_alnum(b);
    const std::set<std::string> sa(ta.begin(), ta.end());
    const std::set<std::string> sb(tb.begin(), tb.end());

    std::vector<std::string> both, only_a, only_b;
    std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(both));
    std::set_difference(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(only_a));
    std::set_difference(sb.begin(), sb.end(), sa.begin(), sa.end(), std::back_inserter(only_b));

    const std::string i_str = join(both, " ");
    const std::string x_str = trim(i_str + " " + join(only_a, " "));
    const std::string y_str = trim(i_str + " " + join(only_b, " "));

    return std::max({levenshtein_ratio(i_str, x_str),
                     levenshtein_ratio(i_str, y_str),
                     levenshtein_ratio(x_str, y_str)});
}

} // namespace skillforge
