#include "bnci/ci.hpp"

#include <algorithm>
#include <iterator>
#include <sstream>
#include <unordered_map>

#include "bnci/error.hpp"
#include "text_util.hpp"

namespace bnci {

NodeSet::NodeSet(std::initializer_list<NodeId> ids) : NodeSet(std::vector<NodeId>(ids)) {}

NodeSet::NodeSet(std::vector<NodeId> ids) : ids_(std::move(ids)) {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

NodeSet NodeSet::range(NodeId first, NodeId last) {
    NodeSet s;
    for (NodeId i = first; i < last; ++i) s.ids_.push_back(i);
    return s;
}

NodeSet NodeSet::from_mask(std::uint64_t mask) {
    NodeSet s;
    for (NodeId i = 0; mask != 0; ++i, mask >>= 1) {
        if (mask & 1U) s.ids_.push_back(i);
    }
    return s;
}

bool NodeSet::contains(NodeId id) const { return std::binary_search(ids_.begin(), ids_.end(), id); }

bool NodeSet::intersects(const NodeSet& other) const {
    auto i = ids_.begin();
    auto j = other.ids_.begin();
    while (i != ids_.end() && j != other.ids_.end()) {
        if (*i == *j) return true;
        if (*i < *j) ++i; else ++j;
    }
    return false;
}

bool NodeSet::is_subset_of(const NodeSet& other) const {
    return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(), ids_.end());
}

std::uint64_t NodeSet::mask() const {
    std::uint64_t m = 0;
    for (NodeId id : ids_) m |= std::uint64_t{1} << id;
    return m;
}

NodeSet operator|(const NodeSet& a, const NodeSet& b) {
    NodeSet out;
    std::set_union(a.ids_.begin(), a.ids_.end(), b.ids_.begin(), b.ids_.end(),
                   std::back_inserter(out.ids_));
    return out;
}

NodeSet operator-(const NodeSet& a, const NodeSet& b) {
    NodeSet out;
    std::set_difference(a.ids_.begin(), a.ids_.end(), b.ids_.begin(), b.ids_.end(),
                        std::back_inserter(out.ids_));
    return out;
}

NodeSet operator&(const NodeSet& a, const NodeSet& b) {
    NodeSet out;
    std::set_intersection(a.ids_.begin(), a.ids_.end(), b.ids_.begin(), b.ids_.end(),
                          std::back_inserter(out.ids_));
    return out;
}

CiStatement::CiStatement(NodeSet a, NodeSet c, NodeSet b)
    : a_(std::move(a)), c_(std::move(c)), b_(std::move(b)) {
    if (a_.empty() || b_.empty()) {
        throw Error(ErrorKind::InvalidStatement, "both sides of a CI statement must be nonempty");
    }
    if (a_.intersects(b_) || a_.intersects(c_) || b_.intersects(c_)) {
        throw Error(ErrorKind::InvalidStatement, "CI statement sets must be pairwise disjoint");
    }
}

CiStatement CiStatement::canonical() const { return b_ < a_ ? swapped() : *this; }

void CiStatement::check_within(std::size_t n) const {
    const NodeId top = support().max();
    if (top >= n) {
        throw Error(ErrorKind::InvalidStatement,
                    "index " + std::to_string(top) + " out of range for " + std::to_string(n) +
                        " variables");
    }
}

CiSet::CiSet(std::initializer_list<CiStatement> stmts) {
    for (const auto& s : stmts) insert(s);
}

bool CiSet::insert(const CiStatement& stmt) { return stmts_.insert(stmt.canonical()).second; }

bool CiSet::contains(const CiStatement& stmt) const { return stmts_.count(stmt.canonical()) > 0; }

bool CiSet::is_subset_of(const CiSet& other) const {
    return std::includes(other.stmts_.begin(), other.stmts_.end(), stmts_.begin(), stmts_.end());
}

void CiSet::merge(const CiSet& other) { stmts_.insert(other.stmts_.begin(), other.stmts_.end()); }

std::vector<std::string> index_labels(std::size_t n) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    return labels;
}

namespace {

NodeSet parse_side(std::string_view text, const std::unordered_map<std::string_view, NodeId>& index,
                   std::string_view whole) {
    std::vector<NodeId> ids;
    for (auto tok : detail::split_tokens(text)) {
        const auto it = index.find(tok);
        if (it == index.end()) {
            throw Error(ErrorKind::UnknownLabel,
                        "unknown label '" + std::string(tok) + "' in '" + std::string(whole) + "'");
        }
        ids.push_back(it->second);
    }
    return NodeSet(std::move(ids));
}

}  // namespace

CiStatement parse_ci(std::string_view text, const std::vector<std::string>& labels) {
    std::unordered_map<std::string_view, NodeId> index;
    for (NodeId i = 0; i < labels.size(); ++i) index.emplace(labels[i], i);

    const auto body = detail::trim(text);
    const auto sep = body.find("_||_");
    if (sep == std::string_view::npos) {
        throw Error(ErrorKind::SyntaxError, "missing '_||_' in CI statement '" + std::string(body) + "'");
    }
    const auto lhs = body.substr(0, sep);
    auto rest = body.substr(sep + 4);
    std::string_view rhs = rest;
    std::string_view given;
    if (const auto bar = rest.find('|'); bar != std::string_view::npos) {
        rhs = rest.substr(0, bar);
        given = rest.substr(bar + 1);
        if (given.find('|') != std::string_view::npos) {
            throw Error(ErrorKind::SyntaxError, "more than one '|' in '" + std::string(body) + "'");
        }
    }
    NodeSet a = parse_side(lhs, index, body);
    NodeSet b = parse_side(rhs, index, body);
    NodeSet c = parse_side(given, index, body);
    if (a.empty() || b.empty()) {
        throw Error(ErrorKind::SyntaxError, "empty side in CI statement '" + std::string(body) + "'");
    }
    return CiStatement(std::move(a), std::move(c), std::move(b));
}

namespace {

void write_side(std::ostream& os, const NodeSet& s, const std::vector<std::string>& labels) {
    bool first = true;
    for (NodeId id : s) {
        if (!first) os << ',';
        first = false;
        os << (id < labels.size() ? labels[id] : std::to_string(id));
    }
}

}  // namespace

std::string format_ci(const CiStatement& stmt, const std::vector<std::string>& labels) {
    std::ostringstream os;
    write_side(os, stmt.a(), labels);
    os << " _||_ ";
    write_side(os, stmt.b(), labels);
    if (!stmt.c().empty()) {
        os << " | ";
        write_side(os, stmt.c(), labels);
    }
    return os.str();
}

CiSetFile parse_ci_set(std::string_view text, std::vector<std::string> default_labels) {
    CiSetFile file;
    file.labels = std::move(default_labels);
    bool seen_statement = false;
    for (auto raw : detail::split_lines(text)) {
        const auto line = detail::strip_comment(raw);
        if (line.empty()) continue;
        if (detail::starts_with_keyword(line, "vars")) {
            if (seen_statement) {
                throw Error(ErrorKind::SyntaxError, "'vars:' must precede the statements");
            }
            auto rest = line.substr(4);
            if (!rest.empty() && rest.front() == ':') rest.remove_prefix(1);
            file.labels.clear();
            for (auto tok : detail::split_tokens(rest)) {
                if (!detail::is_valid_label(tok)) {
                    throw Error(ErrorKind::SyntaxError, "invalid label '" + std::string(tok) + "'");
                }
                if (std::find(file.labels.begin(), file.labels.end(), tok) != file.labels.end()) {
                    throw Error(ErrorKind::DuplicateLabel, std::string(tok));
                }
                file.labels.emplace_back(tok);
            }
            continue;
        }
        seen_statement = true;
        file.statements.insert(parse_ci(line, file.labels));
    }
    return file;
}

std::string format_ci_set(const CiSet& set, const std::vector<std::string>& labels) {
    std::string out;
    for (const auto& stmt : set) {
        out += format_ci(stmt, labels);
        out += '\n';
    }
    return out;
}

}  // namespace bnci
