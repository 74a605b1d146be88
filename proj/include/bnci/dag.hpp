#ifndef BNCI_DAG_HPP
#define BNCI_DAG_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bnci/ci.hpp"

namespace bnci {

using Edge = std::pair<NodeId, NodeId>;  // (parent, child)

/// Immutable directed acyclic graph over nodes 0..n-1. Labels are for
/// presentation only.
class Dag {
public:
    /// Throws CycleDetected for self-loops or cycles, UnknownLabel for
    /// out-of-range endpoints, DuplicateLabel for repeated labels.
    Dag(std::size_t node_count, std::vector<Edge> edges, std::vector<std::string> labels = {});

    static Dag edgeless(std::size_t node_count) { return Dag(node_count, {}); }

    std::size_t node_count() const noexcept { return labels_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::string& label(NodeId v) const { return labels_.at(v); }
    std::optional<NodeId> find(std::string_view label) const;

    std::span<const NodeId> parents(NodeId v) const { return parents_.at(v); }
    std::span<const NodeId> children(NodeId v) const { return children_.at(v); }
    bool has_edge(NodeId from, NodeId to) const;

    /// A topological order, smallest available index first.
    const std::vector<NodeId>& topological_order() const noexcept { return topo_; }
    NodeSet descendants(NodeId v) const;  // excludes v
    NodeSet ancestors(const NodeSet& vs) const;  // includes vs

    Dag without_edge(const Edge& e) const;

private:
    std::vector<std::string> labels_;
    std::vector<Edge> edges_;  // sorted
    std::vector<std::vector<NodeId>> parents_;
    std::vector<std::vector<NodeId>> children_;
    std::vector<NodeId> topo_;
};

/// DAG file format: `nodes: <label>+`, then `<label> -> <label>` per line,
/// `#` starts a comment.
Dag parse_dag(std::string_view text);
std::string to_text(const Dag& g);
std::string to_dot(const Dag& g, std::string_view name = "G");

/// I_l(G): ({i}, pa(i), ndes(i)) for each node with nonempty ndes(i), where
/// ndes(i) excludes i, its descendants and its parents.
CiSet local_ci_set(const Dag& g);

/// Network whose only separation (up to the semigraphoid consequences) is
/// stmt: edges inside A, B, C and the rest R in index order, plus C x A,
/// C x B and (A u B u C) x R.
Dag single_ci_network(std::size_t n, const CiStatement& stmt);

}  // namespace bnci

#endif  // BNCI_DAG_HPP
