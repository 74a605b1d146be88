#include "bnci/dag.hpp"

#include <algorithm>
#include <queue>
#include <sstream>
#include <unordered_map>

#include "bnci/error.hpp"
#include "text_util.hpp"

namespace bnci {

Dag::Dag(std::size_t node_count, std::vector<Edge> edges, std::vector<std::string> labels)
    : labels_(labels.empty() ? index_labels(node_count) : std::move(labels)),
      edges_(std::move(edges)),
      parents_(node_count),
      children_(node_count) {
    if (labels_.size() != node_count) {
        throw Error(ErrorKind::NodeCountMismatch, "label count differs from node count");
    }
    {
        std::vector<std::string_view> sorted(labels_.begin(), labels_.end());
        std::sort(sorted.begin(), sorted.end());
        if (auto it = std::adjacent_find(sorted.begin(), sorted.end()); it != sorted.end()) {
            throw Error(ErrorKind::DuplicateLabel, std::string(*it));
        }
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    for (const auto& [from, to] : edges_) {
        if (from >= node_count || to >= node_count) {
            throw Error(ErrorKind::UnknownLabel, "edge endpoint out of range");
        }
        if (from == to) {
            throw Error(ErrorKind::CycleDetected, "self-loop on " + labels_[from]);
        }
        parents_[to].push_back(from);
        children_[from].push_back(to);
    }
    for (auto& p : parents_) std::sort(p.begin(), p.end());

    // Kahn's algorithm; a min-heap keeps the order deterministic.
    std::vector<std::size_t> indegree(node_count);
    for (std::size_t v = 0; v < node_count; ++v) indegree[v] = parents_[v].size();
    std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
    for (NodeId v = 0; v < node_count; ++v) {
        if (indegree[v] == 0) ready.push(v);
    }
    topo_.reserve(node_count);
    while (!ready.empty()) {
        const NodeId v = ready.top();
        ready.pop();
        topo_.push_back(v);
        for (NodeId c : children_[v]) {
            if (--indegree[c] == 0) ready.push(c);
        }
    }
    if (topo_.size() != node_count) {
        for (NodeId v = 0; v < node_count; ++v) {
            if (indegree[v] != 0) {
                throw Error(ErrorKind::CycleDetected, "cycle through " + labels_[v]);
            }
        }
    }
}

std::optional<NodeId> Dag::find(std::string_view label) const {
    for (NodeId v = 0; v < labels_.size(); ++v) {
        if (labels_[v] == label) return v;
    }
    return std::nullopt;
}

bool Dag::has_edge(NodeId from, NodeId to) const {
    return std::binary_search(edges_.begin(), edges_.end(), Edge{from, to});
}

NodeSet Dag::descendants(NodeId v) const {
    std::vector<char> seen(node_count(), 0);
    std::vector<NodeId> stack(children_.at(v).begin(), children_.at(v).end());
    std::vector<NodeId> out;
    while (!stack.empty()) {
        const NodeId u = stack.back();
        stack.pop_back();
        if (seen[u]) continue;
        seen[u] = 1;
        out.push_back(u);
        for (NodeId c : children_[u]) {
            if (!seen[c]) stack.push_back(c);
        }
    }
    return NodeSet(std::move(out));
}

NodeSet Dag::ancestors(const NodeSet& vs) const {
    std::vector<char> seen(node_count(), 0);
    std::vector<NodeId> stack(vs.begin(), vs.end());
    std::vector<NodeId> out;
    while (!stack.empty()) {
        const NodeId u = stack.back();
        stack.pop_back();
        if (seen[u]) continue;
        seen[u] = 1;
        out.push_back(u);
        for (NodeId p : parents_[u]) {
            if (!seen[p]) stack.push_back(p);
        }
    }
    return NodeSet(std::move(out));
}

Dag Dag::without_edge(const Edge& e) const {
    std::vector<Edge> kept;
    kept.reserve(edges_.size());
    for (const auto& x : edges_) {
        if (x != e) kept.push_back(x);
    }
    return Dag(node_count(), std::move(kept), labels_);
}

Dag parse_dag(std::string_view text) {
    std::vector<std::string> labels;
    std::unordered_map<std::string, NodeId> index;
    std::vector<Edge> edges;
    bool have_nodes = false;
    std::size_t line_no = 0;
    for (auto raw : detail::split_lines(text)) {
        ++line_no;
        const auto line = detail::strip_comment(raw);
        if (line.empty()) continue;
        const auto where = " (line " + std::to_string(line_no) + ")";
        if (!have_nodes) {
            if (!line.starts_with("nodes:")) {
                throw Error(ErrorKind::SyntaxError, "expected 'nodes:' header" + where);
            }
            for (auto tok : detail::split_tokens(line.substr(6))) {
                if (!detail::is_valid_label(tok)) {
                    throw Error(ErrorKind::SyntaxError, "invalid label '" + std::string(tok) + "'" + where);
                }
                std::string label(tok);
                if (!index.emplace(label, static_cast<NodeId>(labels.size())).second) {
                    throw Error(ErrorKind::DuplicateLabel, label + where);
                }
                labels.push_back(std::move(label));
            }
            if (labels.empty()) throw Error(ErrorKind::SyntaxError, "no nodes declared" + where);
            have_nodes = true;
            continue;
        }
        const auto arrow = line.find("->");
        if (arrow == std::string_view::npos) {
            throw Error(ErrorKind::SyntaxError, "expected '<label> -> <label>'" + where);
        }
        const auto lhs = detail::trim(line.substr(0, arrow));
        const auto rhs = detail::trim(line.substr(arrow + 2));
        if (!detail::is_valid_label(lhs) || !detail::is_valid_label(rhs)) {
            throw Error(ErrorKind::SyntaxError, "malformed edge '" + std::string(line) + "'" + where);
        }
        auto lookup = [&](std::string_view l) {
            const auto it = index.find(std::string(l));
            if (it == index.end()) throw Error(ErrorKind::UnknownLabel, std::string(l) + where);
            return it->second;
        };
        edges.emplace_back(lookup(lhs), lookup(rhs));
    }
    if (!have_nodes) throw Error(ErrorKind::SyntaxError, "empty DAG file");
    const auto n = labels.size();
    return Dag(n, std::move(edges), std::move(labels));
}

std::string to_text(const Dag& g) {
    std::ostringstream os;
    os << "nodes:";
    for (const auto& l : g.labels()) os << ' ' << l;
    os << '\n';
    for (const auto& [from, to] : g.edges()) os << g.label(from) << " -> " << g.label(to) << '\n';
    return os.str();
}

std::string to_dot(const Dag& g, std::string_view name) {
    std::ostringstream os;
    os << "digraph " << name << " {\n";
    for (const auto& l : g.labels()) os << "  \"" << l << "\";\n";
    for (const auto& [from, to] : g.edges()) {
        os << "  \"" << g.label(from) << "\" -> \"" << g.label(to) << "\";\n";
    }
    os << "}\n";
    return os.str();
}

CiSet local_ci_set(const Dag& g) {
    CiSet out;
    const auto n = static_cast<NodeId>(g.node_count());
    for (NodeId v = 0; v < n; ++v) {
        NodeSet parents(std::vector<NodeId>(g.parents(v).begin(), g.parents(v).end()));
        NodeSet excluded = g.descendants(v) | parents | NodeSet{v};
        NodeSet ndes = NodeSet::range(0, n) - excluded;
        if (ndes.empty()) continue;
        out.insert(CiStatement(NodeSet{v}, std::move(parents), std::move(ndes)));
    }
    return out;
}

Dag single_ci_network(std::size_t n, const CiStatement& stmt) {
    stmt.check_within(n);
    const NodeSet all = NodeSet::range(0, static_cast<NodeId>(n));
    const NodeSet& a = stmt.a();
    const NodeSet& b = stmt.b();
    const NodeSet& c = stmt.c();
    const NodeSet abc = stmt.support();
    const NodeSet rest = all - abc;

    std::vector<Edge> edges;
    auto within = [&](const NodeSet& s) {
        for (std::size_t i = 0; i < s.size(); ++i) {
            for (std::size_t j = i + 1; j < s.size(); ++j) edges.emplace_back(s[i], s[j]);
        }
    };
    auto across = [&](const NodeSet& from, const NodeSet& to) {
        for (NodeId u : from) {
            for (NodeId v : to) edges.emplace_back(u, v);
        }
    };
    within(a);
    within(b);
    within(c);
    within(rest);
    across(c, a);
    across(c, b);
    across(abc, rest);
    return Dag(n, std::move(edges));
}

}  // namespace bnci
