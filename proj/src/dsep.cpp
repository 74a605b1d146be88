#include "bnci/dsep.hpp"

#include <vector>

#include "bnci/error.hpp"

namespace bnci {

namespace {

void check_query(const Dag& g, const NodeSet& a, const NodeSet& b, const NodeSet& c) {
    if (a.empty() || b.empty()) {
        throw Error(ErrorKind::InvalidStatement, "d-separation query needs nonempty A and B");
    }
    if (a.intersects(b) || a.intersects(c) || b.intersects(c)) {
        throw Error(ErrorKind::OverlappingSets, "A, B and C must be pairwise disjoint");
    }
    const NodeSet all = a | b | c;
    if (all.max() >= g.node_count()) {
        throw Error(ErrorKind::InvalidStatement, "node index out of range");
    }
}

}  // namespace

NodeSet d_connected(const Dag& g, const NodeSet& a, const NodeSet& c) {
    const std::size_t n = g.node_count();
    std::vector<char> observed(n, 0);
    for (NodeId v : c) observed[v] = 1;

    // Nodes with an observed descendant (or observed themselves) open colliders.
    std::vector<char> opens_collider(n, 0);
    for (NodeId v : g.ancestors(c)) opens_collider[v] = 1;

    // State: node plus whether we arrived moving against (up) or along (down)
    // edge direction.
    enum : unsigned { kUp = 0, kDown = 1 };
    std::vector<char> visited(2 * n, 0);
    std::vector<char> reached(n, 0);
    std::vector<std::pair<NodeId, unsigned>> stack;
    for (NodeId v : a) stack.emplace_back(v, kUp);

    while (!stack.empty()) {
        const auto [v, dir] = stack.back();
        stack.pop_back();
        if (visited[2 * v + dir]) continue;
        visited[2 * v + dir] = 1;
        if (!observed[v]) reached[v] = 1;

        if (dir == kUp) {
            if (observed[v]) continue;
            for (NodeId p : g.parents(v)) stack.emplace_back(p, kUp);
            for (NodeId ch : g.children(v)) stack.emplace_back(ch, kDown);
        } else {
            if (!observed[v]) {
                for (NodeId ch : g.children(v)) stack.emplace_back(ch, kDown);
            }
            if (opens_collider[v]) {
                for (NodeId p : g.parents(v)) stack.emplace_back(p, kUp);
            }
        }
    }

    std::vector<NodeId> out;
    for (NodeId v = 0; v < n; ++v) {
        if (reached[v] && !a.contains(v)) out.push_back(v);
    }
    return NodeSet(std::move(out));
}

bool d_separated(const Dag& g, const NodeSet& a, const NodeSet& b, const NodeSet& c) {
    check_query(g, a, b, c);
    return !d_connected(g, a, c).intersects(b);
}

bool d_separated(const Dag& g, const CiStatement& stmt) {
    return d_separated(g, stmt.a(), stmt.b(), stmt.c());
}

bool d_separated_moral(const Dag& g, const NodeSet& a, const NodeSet& b, const NodeSet& c) {
    check_query(g, a, b, c);
    const std::size_t n = g.node_count();
    const NodeSet keep = g.ancestors(a | b | c);
    std::vector<char> in_keep(n, 0);
    for (NodeId v : keep) in_keep[v] = 1;

    std::vector<std::vector<NodeId>> adj(n);
    auto link = [&](NodeId u, NodeId v) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    };
    for (NodeId v : keep) {
        const auto ps = g.parents(v);
        for (std::size_t i = 0; i < ps.size(); ++i) {
            link(ps[i], v);
            for (std::size_t j = i + 1; j < ps.size(); ++j) link(ps[i], ps[j]);
        }
    }

    std::vector<char> seen(n, 0);
    for (NodeId v : c) seen[v] = 1;
    std::vector<NodeId> stack(a.begin(), a.end());
    while (!stack.empty()) {
        const NodeId v = stack.back();
        stack.pop_back();
        if (seen[v]) continue;
        seen[v] = 1;
        if (b.contains(v)) return false;
        for (NodeId u : adj[v]) {
            if (!seen[u] && in_keep[u]) stack.push_back(u);
        }
    }
    return true;
}

CiSet implied_ci_set(const Dag& g, std::size_t cap) {
    const std::size_t n = g.node_count();
    if (n > cap) {
        throw Error(ErrorKind::TooManyNodes,
                    std::to_string(n) + " nodes exceeds the enumeration cap of " + std::to_string(cap));
    }
    CiSet out;
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t am = 1; am <= full; ++am) {
        const std::uint64_t rest = full & ~am;
        // Every C drawn from the complement of A, including the empty set.
        for (std::uint64_t cm = rest;; cm = (cm - 1) & rest) {
            const NodeSet a = NodeSet::from_mask(am);
            const NodeSet c = NodeSet::from_mask(cm);
            const std::uint64_t connected = d_connected(g, a, c).mask();
            const std::uint64_t separated = rest & ~cm & ~connected;
            for (std::uint64_t bm = separated; bm != 0; bm = (bm - 1) & separated) {
                const NodeSet b = NodeSet::from_mask(bm);
                if (b < a) continue;  // the other orientation is emitted from the B side
                out.insert(CiStatement(a, c, b));
            }
            if (cm == 0) break;
        }
    }
    return out;
}

bool inclusion_implies(const Dag& g1, const Dag& g0, std::size_t cap) {
    if (g1.node_count() != g0.node_count()) {
        throw Error(ErrorKind::NodeCountMismatch, "networks have different node counts");
    }
    if (g1.node_count() > cap) {
        throw Error(ErrorKind::TooManyNodes,
                    std::to_string(g1.node_count()) + " nodes exceeds the enumeration cap");
    }
    for (const auto& stmt : implied_ci_set(g0, cap)) {
        if (!d_separated(g1, stmt)) return false;
    }
    return true;
}

}  // namespace bnci
