#ifndef BNCI_CI_HPP
#define BNCI_CI_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace bnci {

using NodeId = std::uint32_t;

/// Sorted, duplicate-free list of node (or variable) indices.
class NodeSet {
public:
    NodeSet() = default;
    NodeSet(std::initializer_list<NodeId> ids);
    explicit NodeSet(std::vector<NodeId> ids);

    static NodeSet range(NodeId first, NodeId last);  // [first, last)
    static NodeSet from_mask(std::uint64_t mask);

    bool empty() const noexcept { return ids_.empty(); }
    std::size_t size() const noexcept { return ids_.size(); }
    NodeId operator[](std::size_t i) const { return ids_[i]; }
    auto begin() const noexcept { return ids_.begin(); }
    auto end() const noexcept { return ids_.end(); }
    const std::vector<NodeId>& ids() const noexcept { return ids_; }

    bool contains(NodeId id) const;
    bool intersects(const NodeSet& other) const;
    bool is_subset_of(const NodeSet& other) const;
    NodeId max() const { return ids_.back(); }

    /// Only valid when every element is below 64.
    std::uint64_t mask() const;

    friend NodeSet operator|(const NodeSet& a, const NodeSet& b);
    friend NodeSet operator-(const NodeSet& a, const NodeSet& b);
    friend NodeSet operator&(const NodeSet& a, const NodeSet& b);

    friend bool operator==(const NodeSet&, const NodeSet&) = default;
    friend auto operator<=>(const NodeSet&, const NodeSet&) = default;

private:
    std::vector<NodeId> ids_;
};

/// The disjoint triple (A, C, B), read as X_A independent of X_B given X_C.
class CiStatement {
public:
    /// Throws Error(InvalidStatement) unless A, B are nonempty and A, B, C pairwise disjoint.
    CiStatement(NodeSet a, NodeSet c, NodeSet b);

    const NodeSet& a() const noexcept { return a_; }
    const NodeSet& c() const noexcept { return c_; }
    const NodeSet& b() const noexcept { return b_; }

    CiStatement swapped() const { return CiStatement(b_, c_, a_); }
    /// Orientation with A lexicographically not greater than B.
    CiStatement canonical() const;
    NodeSet support() const { return a_ | b_ | c_; }

    /// Throws Error(InvalidStatement) when an index is >= n.
    void check_within(std::size_t n) const;

    friend bool operator==(const CiStatement&, const CiStatement&) = default;
    friend auto operator<=>(const CiStatement&, const CiStatement&) = default;

private:
    NodeSet a_;
    NodeSet c_;
    NodeSet b_;
};

/// Set of CI statements, deduplicated under the A/B symmetry.
class CiSet {
public:
    CiSet() = default;
    CiSet(std::initializer_list<CiStatement> stmts);

    bool insert(const CiStatement& stmt);
    bool contains(const CiStatement& stmt) const;
    bool is_subset_of(const CiSet& other) const;
    void merge(const CiSet& other);

    std::size_t size() const noexcept { return stmts_.size(); }
    bool empty() const noexcept { return stmts_.empty(); }
    auto begin() const noexcept { return stmts_.begin(); }
    auto end() const noexcept { return stmts_.end(); }

    friend bool operator==(const CiSet&, const CiSet&) = default;

private:
    std::set<CiStatement> stmts_;  // canonical orientation only
};

/// Default labels "0", "1", ... used when a context has no names.
std::vector<std::string> index_labels(std::size_t n);

/// Parses `A1,A2 _||_ B1 | C1,C2`; the `| ...` part is optional.
CiStatement parse_ci(std::string_view text, const std::vector<std::string>& labels);
std::string format_ci(const CiStatement& stmt, const std::vector<std::string>& labels);

/// A CI-set file: one statement per line, `#` comments, optional `vars: a b c`
/// header naming the variables. Without a header, `default_labels` are used.
struct CiSetFile {
    std::vector<std::string> labels;
    CiSet statements;
};
CiSetFile parse_ci_set(std::string_view text, std::vector<std::string> default_labels);
std::string format_ci_set(const CiSet& set, const std::vector<std::string>& labels);

}  // namespace bnci

#endif  // BNCI_CI_HPP
