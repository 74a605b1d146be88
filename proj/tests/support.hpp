#ifndef BNCI_TESTS_SUPPORT_HPP
#define BNCI_TESTS_SUPPORT_HPP

// Fixtures and brute-force reference implementations shared by the unit
// tests. Nothing here calls the library routine it is used to check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "bnci/ci.hpp"
#include "bnci/dag.hpp"
#include "bnci/distribution.hpp"
#include "bnci/reduction.hpp"

namespace testing {

using bnci::Dag;
using bnci::Edge;
using bnci::JointDist;
using bnci::NodeId;
using bnci::NodeSet;
using bnci::Outcome;
using bnci::Rational;
using bnci::Value;

inline Dag chain(std::size_t n) {
    std::vector<Edge> edges;
    for (NodeId v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
    return Dag(n, edges);
}

/// Edges i -> j (i < j in a random relabeling) kept with probability p.
inline Dag random_dag(std::size_t n, std::mt19937_64& rng, double p = 0.4) {
    std::vector<NodeId> perm(n);
    for (NodeId v = 0; v < n; ++v) perm[v] = v;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::bernoulli_distribution keep(p);
    std::vector<Edge> edges;
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) {
            if (keep(rng)) edges.emplace_back(perm[i], perm[j]);
        }
    }
    return Dag(n, edges);
}

/// Uniform independent bits V0, V2 with V1 = V0 xor V2.
inline JointDist xor_triple() {
    std::vector<std::pair<Outcome, Rational>> e;
    for (Value a = 0; a < 2; ++a) {
        for (Value c = 0; c < 2; ++c) e.push_back({{a, a ^ c, c}, Rational(1, 4)});
    }
    return JointDist({"V1", "V2", "V3"}, {2, 2, 2}, e);
}

/// Exact distribution with random positive integer weights on every outcome.
inline JointDist random_exact(const std::vector<Value>& cards, std::mt19937_64& rng, unsigned max_weight = 5,
                              double zero_prob = 0.0) {
    std::vector<std::pair<Outcome, Rational>> e;
    Outcome x(cards.size(), 0);
    std::uniform_int_distribution<unsigned> w(1, max_weight);
    std::bernoulli_distribution zero(zero_prob);
    Rational total = 0;
    while (true) {
        const unsigned weight = zero(rng) ? 0 : w(rng);
        if (weight > 0) {
            e.push_back({x, Rational(weight)});
            total += weight;
        }
        std::size_t i = x.size();
        while (i-- > 0) {
            if (++x[i] < cards[i]) break;
            x[i] = 0;
        }
        if (i == static_cast<std::size_t>(-1)) break;
    }
    if (e.empty()) {
        e.push_back({Outcome(cards.size(), 0), Rational(1)});
        total = 1;
    }
    for (auto& [o, m] : e) m /= total;
    return JointDist(bnci::index_labels(cards.size()), cards, e);
}

// d-separation by enumerating every simple path of the skeleton.

inline bool path_blocked(const Dag& g, const std::vector<NodeId>& path, const std::set<NodeId>& given) {
    // Descendant-or-self sets by plain DFS over the edge list.
    auto has_given_descendant = [&](NodeId v) {
        std::vector<NodeId> stack{v};
        std::set<NodeId> seen;
        while (!stack.empty()) {
            const NodeId u = stack.back();
            stack.pop_back();
            if (!seen.insert(u).second) continue;
            if (given.count(u)) return true;
            for (const auto& [from, to] : g.edges()) {
                if (from == u) stack.push_back(to);
            }
        }
        return false;
    };
    for (std::size_t k = 1; k + 1 < path.size(); ++k) {
        const bool into_from_left = g.has_edge(path[k - 1], path[k]);
        const bool into_from_right = g.has_edge(path[k + 1], path[k]);
        const bool collider = into_from_left && into_from_right;
        if (collider) {
            if (!has_given_descendant(path[k])) return true;
        } else if (given.count(path[k])) {
            return true;
        }
    }
    return false;
}

inline bool dsep_by_paths(const Dag& g, const NodeSet& a, const NodeSet& b, const NodeSet& c) {
    const std::size_t n = g.node_count();
    std::vector<std::vector<NodeId>> adj(n);
    for (const auto& [from, to] : g.edges()) {
        adj[from].push_back(to);
        adj[to].push_back(from);
    }
    const std::set<NodeId> given(c.begin(), c.end());
    std::vector<NodeId> path;
    std::vector<char> on_path(n, 0);
    std::function<bool(NodeId)> open_path_from = [&](NodeId v) {
        path.push_back(v);
        on_path[v] = 1;
        bool found = false;
        if (b.contains(v) && path.size() > 1) {
            found = !path_blocked(g, path, given);
        } else {
            for (NodeId u : adj[v]) {
                if (on_path[u] || a.contains(u)) continue;
                if (open_path_from(u)) {
                    found = true;
                    break;
                }
            }
        }
        on_path[v] = 0;
        path.pop_back();
        return found;
    };
    for (NodeId s : a) {
        if (open_path_from(s)) return false;
    }
    return true;
}

// Conditional independence by dense enumeration of every value triple.

inline std::uint64_t states_of(const JointDist& p, const NodeSet& s) {
    std::uint64_t k = 1;
    for (NodeId v : s) k *= p.cards()[v];
    return k;
}

inline Outcome decode(const JointDist& p, const NodeSet& s, std::uint64_t code) {
    Outcome out(s.size());
    for (std::size_t i = s.size(); i-- > 0;) {
        out[i] = static_cast<Value>(code % p.cards()[s[i]]);
        code /= p.cards()[s[i]];
    }
    return out;
}

/// Probability that the variables in s take the values `vals`, by summing
/// exact masses of matching stored outcomes.
inline Rational prob_of(const JointDist& p, const NodeSet& s, const Outcome& vals) {
    Rational total = 0;
    for (std::size_t i = 0; i < p.support_size(); ++i) {
        const auto o = p.outcome(i);
        bool match = true;
        for (std::size_t k = 0; k < s.size() && match; ++k) match = o[s[k]] == vals[k];
        if (match) total += p.exact_masses()[i];
    }
    return total;
}

inline bool ci_by_enumeration(const JointDist& p, const NodeSet& a, const NodeSet& c, const NodeSet& b) {
    const NodeSet ac = a | c;
    const NodeSet bc = b | c;
    const NodeSet abc = a | b | c;
    for (std::uint64_t ka = 0; ka < states_of(p, a); ++ka) {
        for (std::uint64_t kb = 0; kb < states_of(p, b); ++kb) {
            for (std::uint64_t kc = 0; kc < states_of(p, c); ++kc) {
                const auto va = decode(p, a, ka);
                const auto vb = decode(p, b, kb);
                const auto vc = decode(p, c, kc);
                std::map<NodeId, Value> assign;
                for (std::size_t i = 0; i < a.size(); ++i) assign[a[i]] = va[i];
                for (std::size_t i = 0; i < b.size(); ++i) assign[b[i]] = vb[i];
                for (std::size_t i = 0; i < c.size(); ++i) assign[c[i]] = vc[i];
                auto vals = [&](const NodeSet& s) {
                    Outcome o;
                    for (NodeId v : s) o.push_back(assign[v]);
                    return o;
                };
                const Rational lhs = prob_of(p, abc, vals(abc)) * (c.empty() ? Rational(1) : prob_of(p, c, vals(c)));
                const Rational rhs = prob_of(p, ac, vals(ac)) * prob_of(p, bc, vals(bc));
                if (lhs != rhs) return false;
            }
        }
    }
    return true;
}

/// Local CIs straight from the definition, using reachability over the edge list.
inline std::set<std::tuple<NodeSet, NodeSet, NodeSet>> local_cis_by_definition(const Dag& g) {
    std::set<std::tuple<NodeSet, NodeSet, NodeSet>> out;
    const auto n = static_cast<NodeId>(g.node_count());
    for (NodeId v = 0; v < n; ++v) {
        std::set<NodeId> desc;
        std::vector<NodeId> stack{v};
        while (!stack.empty()) {
            const NodeId u = stack.back();
            stack.pop_back();
            for (const auto& [from, to] : g.edges()) {
                if (from == u && desc.insert(to).second) stack.push_back(to);
            }
        }
        std::vector<NodeId> parents, rest;
        for (NodeId u = 0; u < n; ++u) {
            if (g.has_edge(u, v)) parents.push_back(u);
        }
        for (NodeId u = 0; u < n; ++u) {
            if (u != v && !desc.count(u) && !g.has_edge(u, v)) rest.push_back(u);
        }
        if (!rest.empty()) out.insert({NodeSet{v}, NodeSet(parents), NodeSet(rest)});
    }
    return out;
}

/// Two groups {1,2}, {2,3}; V2 <= (V1,V3), V4 <= V3, V3 <= V4; target
/// V3 <= V1 with V4 as the duplicate.
inline bnci::ImplicationInstance figure2_instance() {
    bnci::ImplicationInstance inst;
    inst.n = 4;
    inst.c1 = {1, 2};
    inst.c2 = {2, 3};
    inst.fds = {{{1, 3}, 2}, {{3}, 4}, {{4}, 3}};
    inst.target = bnci::FdTarget{1, 3};
    inst.b0_prime = 4;
    return inst;
}

/// V1, V3 uniform bits, V2 = V1 xor V3, V4 = V3.
inline JointDist figure2_pv() {
    std::vector<std::pair<Outcome, Rational>> e;
    for (Value a = 0; a < 2; ++a) {
        for (Value c = 0; c < 2; ++c) e.push_back({{a, a ^ c, c, c}, Rational(1, 4)});
    }
    return JointDist({"V1", "V2", "V3", "V4"}, {2, 2, 2, 2}, e);
}

}  // namespace testing

#endif  // BNCI_TESTS_SUPPORT_HPP
