#ifndef BNCI_SRC_TEXT_UTIL_HPP
#define BNCI_SRC_TEXT_UTIL_HPP

#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bnci::detail {

inline std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n";
    const auto first = s.find_first_not_of(ws);
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(ws);
    return s.substr(first, last - first + 1);
}

inline std::string_view strip_comment(std::string_view line) {
    const auto hash = line.find('#');
    return trim(hash == std::string_view::npos ? line : line.substr(0, hash));
}

inline std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto nl = text.find('\n', start);
        if (nl == std::string_view::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    return lines;
}

/// Splits on whitespace and commas.
inline std::vector<std::string_view> split_tokens(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    auto is_sep = [](char ch) { return ch == ' ' || ch == '\t' || ch == ',' || ch == '\r'; };
    while (i < s.size()) {
        while (i < s.size() && is_sep(s[i])) ++i;
        const auto start = i;
        while (i < s.size() && !is_sep(s[i])) ++i;
        if (i > start) out.push_back(s.substr(start, i - start));
    }
    return out;
}

inline bool is_valid_label(std::string_view s) {
    if (s.empty()) return false;
    for (char ch : s) {
        const bool ok = (ch >= 'A' && ch <= 'Z') || (ch >= 'a' && ch <= 'z') ||
                        (ch >= '0' && ch <= '9') || ch == '_' || ch == '^';
        if (!ok) return false;
    }
    return true;
}

template <class Int>
std::optional<Int> parse_int(std::string_view s) {
    Int value{};
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (ec != std::errc{} || ptr != end) return std::nullopt;
    return value;
}

inline bool starts_with_keyword(std::string_view line, std::string_view keyword) {
    if (!line.starts_with(keyword)) return false;
    if (line.size() == keyword.size()) return true;
    const char next = line[keyword.size()];
    return next == ' ' || next == '\t' || next == ':';
}

}  // namespace bnci::detail

#endif  // BNCI_SRC_TEXT_UTIL_HPP
