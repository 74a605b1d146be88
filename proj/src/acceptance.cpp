#include "bnci/acceptance.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdio>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "bnci/dag.hpp"
#include "bnci/distribution.hpp"
#include "bnci/dsep.hpp"
#include "bnci/graphoid.hpp"
#include "bnci/independence.hpp"
#include "bnci/majorization.hpp"
#include "bnci/oracle.hpp"
#include "bnci/reduction.hpp"
#include "bnci/sampling.hpp"
#include "bnci/statistic.hpp"
#include "bnci/witness.hpp"

namespace bnci {

namespace {

using Clock = std::chrono::steady_clock;

struct Check {
    bool passed = false;
    std::string detail;
};

// Every DAG whose edges respect the order 0 < 1 < ... < n-1.
template <class F>
void for_each_ordered_dag(std::size_t n, F&& f) {
    std::vector<Edge> pairs;
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    }
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << pairs.size()); ++bits) {
        std::vector<Edge> edges;
        for (std::size_t e = 0; e < pairs.size(); ++e) {
            if (bits >> e & 1) edges.push_back(pairs[e]);
        }
        f(Dag(n, std::move(edges)));
    }
}

// Every disjoint (A, B, C) with A, B nonempty, both orientations.
template <class F>
void for_each_triple(std::size_t n, F&& f) {
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t a = 1; a <= full; ++a) {
        for (std::uint64_t b = 1; b <= full; ++b) {
            if (a & b) continue;
            const std::uint64_t rest = full & ~(a | b);
            for (std::uint64_t c = rest;; c = (c - 1) & rest) {
                f(NodeSet::from_mask(a), NodeSet::from_mask(b), NodeSet::from_mask(c));
                if (c == 0) break;
            }
        }
    }
}

Dag random_dag(std::size_t n, std::mt19937_64& rng, double p) {
    std::vector<NodeId> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
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

// d-separation by listing every simple path of the skeleton and testing each
// interior node against the blocking rules.
class PathOracle {
public:
    explicit PathOracle(const Dag& g) : n_(g.node_count()), edge_(n_, std::vector<char>(n_, 0)), below_(n_) {
        for (const auto& [from, to] : g.edges()) edge_[from][to] = 1;
        for (NodeId v = 0; v < n_; ++v) {
            std::vector<NodeId> stack{v};
            below_[v].assign(n_, 0);
            while (!stack.empty()) {
                const NodeId u = stack.back();
                stack.pop_back();
                if (below_[v][u]) continue;
                below_[v][u] = 1;
                for (NodeId w = 0; w < n_; ++w) {
                    if (edge_[u][w]) stack.push_back(w);
                }
            }
        }
    }

    bool separated(const NodeSet& a, const NodeSet& b, const NodeSet& c) {
        in_a_.assign(n_, 0);
        in_b_.assign(n_, 0);
        in_c_.assign(n_, 0);
        for (NodeId v : a) in_a_[v] = 1;
        for (NodeId v : b) in_b_[v] = 1;
        for (NodeId v : c) in_c_[v] = 1;
        on_path_.assign(n_, 0);
        for (NodeId s : a) {
            path_.assign(1, s);
            on_path_[s] = 1;
            const bool open = extend();
            on_path_[s] = 0;
            if (open) return false;
        }
        return true;
    }

private:
    bool blocked() const {
        for (std::size_t k = 1; k + 1 < path_.size(); ++k) {
            const NodeId v = path_[k];
            const bool collider = edge_[path_[k - 1]][v] && edge_[path_[k + 1]][v];
            if (collider) {
                bool active = false;
                for (NodeId u = 0; u < n_ && !active; ++u) active = below_[v][u] && in_c_[u];
                if (!active) return true;
            } else if (in_c_[v]) {
                return true;
            }
        }
        return false;
    }

    bool extend() {
        const NodeId v = path_.back();
        if (path_.size() > 1 && in_b_[v]) return !blocked();
        for (NodeId u = 0; u < n_; ++u) {
            if (!(edge_[v][u] || edge_[u][v]) || on_path_[u] || in_a_[u]) continue;
            path_.push_back(u);
            on_path_[u] = 1;
            const bool open = extend();
            on_path_[u] = 0;
            path_.pop_back();
            if (open) return true;
        }
        return false;
    }

    std::size_t n_;
    std::vector<std::vector<char>> edge_;
    std::vector<std::vector<char>> below_;  // below_[v][u]: u is v or a descendant of v
    std::vector<char> in_a_, in_b_, in_c_, on_path_;
    std::vector<NodeId> path_;
};

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

Check dsep_soundness() {
    std::size_t triples = 0;
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 200; ++i) {
        std::mt19937_64 rng(1000 + i);
        const std::size_t n = 2 + i % 5;
        const auto g = random_dag(n, rng, 0.4);
        const auto p = sample_factorized(g, std::vector<Value>(n, 2), 5000 + i);
        for (const auto& s : implied_ci_set(g)) {
            worst = std::max(worst, check_ci(p, s).residual);
            ++triples;
        }
    }
    return {worst < 1e-9, std::to_string(triples) + " d-separated triples, max residual " + fmt(worst)};
}

Check dsep_completeness() {
    std::mt19937_64 rng(77);
    std::size_t tried = 0, refuted = 0;
    for (int d = 0; d < 40; ++d) {
        const std::size_t n = 3 + d % 3;
        const auto g = random_dag(n, rng, 0.5);
        std::vector<CiStatement> open;
        for_each_triple(n, [&](const NodeSet& a, const NodeSet& b, const NodeSet& c) {
            if (a < b && !d_separated(g, a, b, c)) open.emplace_back(a, c, b);
        });
        std::shuffle(open.begin(), open.end(), rng);
        for (std::size_t t = 0; t < std::min<std::size_t>(3, open.size()); ++t) {
            OracleBudget budget;
            budget.seed = tried;
            ++tried;
            if (refute_network_implication(g, g, open[t], budget)) ++refuted;
        }
    }
    const double rate = tried == 0 ? 0.0 : static_cast<double>(refuted) / static_cast<double>(tried);
    return {tried > 0 && rate >= 0.95,
            std::to_string(refuted) + "/" + std::to_string(tried) + " non-separated triples refuted (" +
                fmt(100.0 * rate) + "%, need 95%)"};
}

Check dsep_cross_validation() {
    std::size_t dags = 0, queries = 0, mismatches = 0;
    for (std::size_t n = 1; n <= 5; ++n) {
        for_each_ordered_dag(n, [&](const Dag& g) {
            ++dags;
            PathOracle oracle(g);
            for_each_triple(n, [&](const NodeSet& a, const NodeSet& b, const NodeSet& c) {
                ++queries;
                if (d_separated(g, a, b, c) != oracle.separated(a, b, c)) ++mismatches;
            });
        });
    }
    return {mismatches == 0, std::to_string(dags) + " dags, " + std::to_string(queries) + " queries, " +
                                 std::to_string(mismatches) + " disagreements"};
}

Check combination_phenomenon() {
    // W, X, Y, Z = 0, 1, 2, 3.
    const CiSet network1{CiStatement({0}, {1}, {2, 3}), CiStatement({0, 1}, {2}, {3})};
    const CiSet network2{CiStatement({1, 0}, {}, {2})};
    const CiStatement target({0, 1}, {}, {2, 3});
    CiSet both = network1;
    both.merge(network2);
    const bool derived = closure_implies(both, target, 4);
    const bool in1 = closure_implies(network1, target, 4);
    const bool in2 = closure_implies(network2, target, 4);
    return {derived && !in1 && !in2, std::string("combined closure ") + (derived ? "derives" : "misses") +
                                         " (W,X) _||_ (Y,Z); network 1 alone " + (in1 ? "derives" : "does not") +
                                         ", network 2 alone " + (in2 ? "derives" : "does not")};
}

std::vector<Rational> random_pmf(std::size_t k, std::mt19937_64& rng) {
    std::vector<Rational> p(k);
    Rational total = 0;
    for (auto& x : p) {
        x = static_cast<unsigned long>(1 + rng() % 6);
        total += x;
    }
    for (auto& x : p) x /= total;
    return p;
}

bool order_at_least(MajorizationOrder o) { return o == MajorizationOrder::AOverB || o == MajorizationOrder::Both; }

// Positive masses all equal.
bool uniform_on_support(const std::vector<Rational>& p, std::size_t& support) {
    std::vector<Rational> pos;
    for (const auto& x : p) {
        if (x > 0) pos.push_back(x);
    }
    support = pos.size();
    return std::all_of(pos.begin(), pos.end(), [&](const Rational& x) { return x == pos.front(); });
}

// Variables X, Y, Z = 0, 1, 2 with X = f_Z(Y) and X independent of Z.
Check smaller_support() {
    std::mt19937_64 rng(55);
    std::size_t part1_ok = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const Value cx = 1 + static_cast<Value>(rng() % 3);
        const Value cy = cx + static_cast<Value>(rng() % 3);
        const Value cz = 1 + static_cast<Value>(rng() % 3);
        const auto px = random_pmf(cx, rng);
        const auto pz = random_pmf(cz, rng);
        std::vector<std::pair<Outcome, Rational>> e;
        for (Value z = 0; z < cz; ++z) {
            // f_z: every x gets a nonempty preimage.
            std::vector<Value> ys(cy);
            std::iota(ys.begin(), ys.end(), 0);
            std::shuffle(ys.begin(), ys.end(), rng);
            std::vector<Value> f(cy);
            for (Value k = 0; k < cy; ++k) f[ys[k]] = k < cx ? k : static_cast<Value>(rng() % cx);
            for (Value x = 0; x < cx; ++x) {
                std::vector<Value> pre;
                for (Value y = 0; y < cy; ++y) {
                    if (f[y] == x) pre.push_back(y);
                }
                const auto w = random_pmf(pre.size(), rng);
                for (std::size_t k = 0; k < pre.size(); ++k) e.push_back({{x, pre[k], z}, px[x] * pz[z] * w[k]});
            }
        }
        const JointDist p({"X", "Y", "Z"}, {cx, cy, cz}, std::move(e));
        if (check_ci(p, CiStatement({0}, {}, {2})).residual != 0.0) continue;
        if (!check_fd(p, {1, 2}, 0).holds) continue;
        if (order_at_least(majorizes(exact_pmf(p, 0), exact_pmf(p, 1)))) ++part1_ok;
    }

    // Part 2: Y = g(X, Z) with g(., z) injective, which fixes f_z on the
    // support; every such g at cardinalities up to 3.
    const std::map<Value, std::vector<std::vector<Rational>>> grid{
        {1, {{1}}},
        {2, {{Rational(1, 2), Rational(1, 2)}, {Rational(3, 4), Rational(1, 4)}}},
        {3, {{Rational(1, 3), Rational(1, 3), Rational(1, 3)}, {Rational(1, 2), Rational(1, 4), Rational(1, 4)},
             {Rational(1, 2), Rational(1, 3), Rational(1, 6)}}}};
    std::size_t cases = 0, premises = 0, conclusions = 0;
    for (Value cx = 1; cx <= 3; ++cx) {
        for (Value cy = cx; cy <= 3; ++cy) {
            for (Value cz = 1; cz <= 3; ++cz) {
                std::vector<std::vector<Value>> injections;
                std::vector<Value> img(cy);
                std::iota(img.begin(), img.end(), 0);
                std::set<std::vector<Value>> seen;
                do {
                    seen.insert(std::vector<Value>(img.begin(), img.begin() + cx));
                } while (std::next_permutation(img.begin(), img.end()));
                injections.assign(seen.begin(), seen.end());
                std::vector<std::size_t> choice(cz, 0);
                while (true) {
                    for (const auto& px : grid.at(cx)) {
                        for (const auto& pz : grid.at(cz)) {
                            std::vector<std::pair<Outcome, Rational>> e;
                            for (Value x = 0; x < cx; ++x) {
                                for (Value z = 0; z < cz; ++z) e.push_back({{x, injections[choice[z]][x], z}, px[x] * pz[z]});
                            }
                            const JointDist p({"X", "Y", "Z"}, {cx, cy, cz}, std::move(e));
                            ++cases;
                            const bool premise = check_ci(p, CiStatement({0}, {}, {2})).holds &&
                                                 check_fd(p, {1, 2}, 0).holds &&
                                                 check_ci(p, CiStatement({0}, {}, {1})).holds &&
                                                 order_at_least(majorizes(exact_pmf(p, 1), exact_pmf(p, 0)));
                            if (!premise) continue;
                            ++premises;
                            std::size_t sx = 0, sy = 0;
                            const bool ux = uniform_on_support(exact_pmf(p, 0), sx);
                            const bool uy = uniform_on_support(exact_pmf(p, 1), sy);
                            if (ux && uy && sx == sy && check_ci(p, CiStatement({1}, {}, {2})).holds &&
                                check_fd(p, {0, 2}, 1).holds) {
                                ++conclusions;
                            }
                        }
                    }
                    std::size_t k = 0;
                    while (k < cz && ++choice[k] == injections.size()) choice[k++] = 0;
                    if (k == cz) break;
                }
            }
        }
    }
    return {part1_ok == 500 && premises > 0 && conclusions == premises,
            "part 1 " + std::to_string(part1_ok) + "/500; part 2 " + std::to_string(conclusions) + "/" +
                std::to_string(premises) + " premise cases conclude (" + std::to_string(cases) + " enumerated)"};
}

// ell = 2, n = 2: V uniform on 4 points, every tuple of k <= 2 functions.
Check iid_extend_equivalence() {
    constexpr Value kPoints = 4;
    auto function_of = [](unsigned code) {
        std::vector<Value> f(kPoints);
        for (Value v = 0; v < kPoints; ++v) f[v] = code >> v & 1;
        return f;
    };
    auto bijective = [](const std::vector<std::vector<Value>>& cols) {
        std::set<std::vector<Value>> rows;
        for (Value v = 0; v < kPoints; ++v) {
            std::vector<Value> r;
            for (const auto& c : cols) r.push_back(c[v]);
            rows.insert(r);
        }
        return rows.size() == kPoints;
    };
    auto uniform_bit = [](const std::vector<Value>& f) { return std::count(f.begin(), f.end(), 1) == 2; };
    std::size_t labelings = 0, mismatches = 0;
    for (unsigned k = 0; k <= 2; ++k) {
        const unsigned combos = 1u << (4 * k);
        for (unsigned code = 0; code < combos; ++code) {
            std::vector<std::vector<Value>> xs;
            for (unsigned i = 0; i < k; ++i) xs.push_back(function_of(code >> (4 * i) & 15));
            ++labelings;

            // Statement 1 through the distribution predicates.
            bool s1 = true;
            if (k > 0) {
                const auto v = JointDist::uniform({"V"}, {kPoints});
                std::vector<std::string> labels;
                for (unsigned i = 0; i < k; ++i) labels.push_back("X" + std::to_string(i + 1));
                const auto px = v.push_forward(labels, std::vector<Value>(k, 2),
                                               [&](std::span<const Value> in, std::span<Value> out) {
                                                   for (unsigned i = 0; i < k; ++i) out[i] = xs[i][in[0]];
                                               });
                for (unsigned i = 0; i < k; ++i) {
                    s1 = s1 && exact_pmf(px, i) == std::vector<Rational>{Rational(1, 2), Rational(1, 2)};
                }
                if (k >= 2) s1 = s1 && check_mutual_independence(px, px.all_variables()).holds;
            }

            // Statements 2 and 3 by trying every Y tuple.
            bool s2 = false, s3 = false;
            const unsigned free = 2 - k;
            for (unsigned ycode = 0; ycode < (1u << (4 * free)); ++ycode) {
                auto cols = xs;
                bool all_uniform = true;
                for (unsigned i = 0; i < free; ++i) {
                    cols.push_back(function_of(ycode >> (4 * i) & 15));
                    all_uniform = all_uniform && uniform_bit(cols.back());
                }
                if (bijective(cols)) {
                    s2 = true;
                    s3 = s3 || all_uniform;
                }
            }

            const auto ext = iid_extend_witness(2, 2, xs);
            bool built = false;
            if (ext) {
                auto cols = xs;
                bool all_uniform = true;
                for (const auto& y : *ext) {
                    cols.push_back(y);
                    all_uniform = all_uniform && uniform_bit(y);
                }
                built = ext->size() == free && all_uniform && bijective(cols);
            }
            if (s1 != s2 || s2 != s3 || s1 != built) ++mismatches;
        }
    }
    return {mismatches == 0, std::to_string(labelings) + " labelings, " + std::to_string(mismatches) + " mismatches"};
}

Check sufficient_statistic_lemmas() {
    std::mt19937_64 rng(91);
    std::size_t add_ok = 0, insert_ok = 0;
    const Dag uxy(3, {{0, 1}, {1, 2}});
    for (int trial = 0; trial < 200; ++trial) {
        const std::vector<Value> cards{2 + static_cast<Value>(rng() % 2), 2 + static_cast<Value>(rng() % 3),
                                       2 + static_cast<Value>(rng() % 2)};
        const auto p = sample_factorized_exact(uxy, cards, rng(), 2);
        const auto tx = minimal_sufficient_statistic(p, {1}, {0});
        const auto txy = minimal_sufficient_statistic(p, {1, 2}, {0});
        bool same = check_ci(p, CiStatement({0}, {1}, {2})).residual == 0.0;
        for (std::size_t i = 0; i < txy.outcomes.size() && same; ++i) {
            for (std::size_t j = 0; j < txy.outcomes.size() && same; ++j) {
                const auto bi = tx.block_of(std::span<const Value>(txy.outcomes[i]).first(1));
                const auto bj = tx.block_of(std::span<const Value>(txy.outcomes[j]).first(1));
                same = (txy.blocks[i] == txy.blocks[j]) == (bi == bj);
            }
        }
        if (same) ++add_ok;
    }
    const Dag vuxy(4, {{0, 1}, {1, 2}, {2, 3}});
    const Dag with_t(5, {{0, 1}, {1, 4}, {4, 2}, {2, 3}});
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Value> cards(4);
        for (auto& c : cards) c = 2 + static_cast<Value>(rng() % 2);
        const auto p = sample_factorized_exact(vuxy, cards, rng(), 2);
        const auto t = minimal_sufficient_statistic(p, {2}, {1});
        const auto aug = augment_with_statistic(p, t, "T");
        if (satisfies_network(aug, with_t).residual == 0.0) ++insert_ok;
    }
    return {add_ok == 200 && insert_ok == 200, "sufficient_add " + std::to_string(add_ok) +
                                                   "/200, sufficient_insert " + std::to_string(insert_ok) + "/200"};
}

Check figure2_fixture() {
    ImplicationInstance inst;
    inst.n = 4;
    inst.c1 = {1, 2};
    inst.c2 = {2, 3};
    inst.fds = {{{1, 3}, 2}, {{3}, 4}, {{4}, 3}};
    inst.target = FdTarget{1, 3};
    inst.b0_prime = 4;
    const auto out = compile_two_networks(inst);
    std::vector<std::string> failures;
    auto expect = [&](bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    };
    expect(out.network1.node_count() == 24 && out.network2.node_count() == 24, "24 nodes");
    expect(out.network1.edge_count() == 25, "network 1 has 25 edges");
    expect(out.network2.edge_count() == 26, "network 2 has 26 edges");
    expect(out.network1.topological_order().size() == 24 && out.network2.topological_order().size() == 24,
           "acyclic");

    std::vector<std::pair<Outcome, Rational>> e;
    for (Value a = 0; a < 2; ++a) {
        for (Value c = 0; c < 2; ++c) e.push_back({{a, a ^ c, c, c}, Rational(1, 4)});
    }
    const JointDist pv({"V1", "V2", "V3", "V4"}, {2, 2, 2, 2}, e);
    const auto w = trivial_witness(inst, pv);
    expect(satisfies_network(w, out.network1).residual == 0.0, "witness satisfies network 1");
    expect(satisfies_network(w, out.network2).residual == 0.0, "witness satisfies network 2");
    expect(!check_ci(w, out.target_ci).holds, "witness violates the target");

    // T_i = S(((X_i^j)_j, Y_i, Z_i); U). The witness already sits at the
    // state guard, so each check works on the image of (U, T, extra copies).
    const RoleLayout L{inst.n, static_cast<std::uint32_t>(inst.fds.size())};
    std::vector<NodeId> u_ids;
    for (std::uint32_t i = 1; i <= inst.n; ++i) u_ids.push_back(L.u(i));
    const NodeSet u(u_ids);
    std::vector<NodeSet> bases;
    std::vector<StatisticPartition> stats;
    for (std::uint32_t i = 1; i <= inst.n; ++i) {
        std::vector<NodeId> base{L.y(i), L.z(i)};
        for (std::uint32_t j = 1; j <= L.k; ++j) base.push_back(L.x(i, j));
        bases.emplace_back(base);
        stats.push_back(minimal_sufficient_statistic(w, bases.back(), u));
    }
    // Variables: U_1..U_n, T_1..T_n, then `extra` in order.
    auto image = [&](const std::vector<NodeId>& extra) {
        std::vector<std::string> labels;
        std::vector<Value> cards;
        for (auto v : u_ids) {
            labels.push_back(w.labels()[v]);
            cards.push_back(w.cards()[v]);
        }
        for (std::uint32_t i = 1; i <= inst.n; ++i) {
            labels.push_back("T_" + std::to_string(i));
            cards.push_back(static_cast<Value>(stats[i - 1].block_count));
        }
        for (auto v : extra) {
            labels.push_back(w.labels()[v]);
            cards.push_back(w.cards()[v]);
        }
        return w.push_forward(labels, cards, [&](std::span<const Value> in, std::span<Value> out) {
            std::size_t k = 0;
            for (auto v : u_ids) out[k++] = in[v];
            std::vector<Value> base;
            for (const auto& t : stats) {
                base.clear();
                for (NodeId v : t.base) base.push_back(in[v]);
                out[k++] = static_cast<Value>(*t.block_of(base));
            }
            for (auto v : extra) out[k++] = in[v];
        });
    };
    const NodeSet u_img = NodeSet::range(0, inst.n);
    auto t_of = [&](const std::vector<std::uint32_t>& idx) {
        std::vector<NodeId> ids;
        for (auto i : idx) ids.push_back(inst.n + i - 1);
        return NodeSet(ids);
    };
    const auto ut = image({});
    expect(check_mutual_independence(ut, t_of(inst.c1)).residual == 0.0, "T over group 1 mutually independent");
    expect(check_mutual_independence(ut, t_of(inst.c2)).residual == 0.0, "T over group 2 mutually independent");
    for (const auto& fd : inst.fds) {
        expect(check_fd(ut, t_of(fd.a), t_of({fd.b})[0]).residual == 0.0, "T fd");
    }
    std::size_t markov = 0;
    for (std::uint32_t s = 1; s < (1u << inst.n); ++s) {
        if (std::popcount(s) > 2) continue;
        std::vector<std::uint32_t> idx;
        for (std::uint32_t i = 1; i <= inst.n; ++i) {
            if (s >> (i - 1) & 1) idx.push_back(i);
        }
        std::vector<std::vector<NodeId>> copies(L.k + 2);
        for (auto i : idx) {
            copies[0].push_back(L.y(i));
            copies[1].push_back(L.z(i));
            for (std::uint32_t j = 1; j <= L.k; ++j) copies[1 + j].push_back(L.x(i, j));
        }
        for (const auto& c : copies) {
            ++markov;
            const auto p = image(c);
            const NodeSet copy_img = NodeSet::range(2 * inst.n, static_cast<NodeId>(2 * inst.n + c.size()));
            expect(check_ci(p, CiStatement(u_img, t_of(idx), copy_img)).residual == 0.0, "U -> T_S -> copy_S");
        }
    }
    std::string detail = "24 nodes, " + std::to_string(out.network1.edge_count()) + "/" +
                         std::to_string(out.network2.edge_count()) + " edges, " + std::to_string(markov) +
                         " sufficiency chains";
    for (const auto& f : failures) detail += "; failed: " + f;
    return {failures.empty(), detail};
}

Check implication_b_witnesses() {
    std::string detail;
    bool ok = true;
    for (std::uint32_t n : {1u, 2u}) {
        ImplicationAInstance a;
        a.n = n;
        std::vector<std::string> labels;
        for (std::uint32_t i = 1; i <= n; ++i) labels.push_back("V" + std::to_string(i));
        const auto w = implication_b_witness(JointDist::uniform(labels, std::vector<Value>(n, 2)), a);
        const auto b = build_implication_b(a);
        const auto bad = violated_antecedents(b, w);
        ok = ok && bad.empty();
        detail += (detail.empty() ? "" : "; ") + std::string("n=") + std::to_string(n) + ": " +
                  std::to_string(w.variable_count()) + " variables, " + std::to_string(b.fds.size()) + " fds, " +
                  std::to_string(bad.size()) + " violated";
    }
    return {ok, detail};
}

Check inclusion_sweep() {
    std::size_t checks = 0, failures = 0;
    for (std::size_t n = 2; n <= 4; ++n) {
        std::vector<NodeId> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            std::vector<Edge> fwd, back;
            for (std::size_t i = 0; i + 1 < n; ++i) {
                fwd.emplace_back(perm[i], perm[i + 1]);
                back.emplace_back(perm[i + 1], perm[i]);
            }
            const Dag chain(n, fwd), reversed(n, back);
            checks += 2;
            if (!inclusion_implies(chain, reversed)) ++failures;
            if (!inclusion_implies(reversed, chain)) ++failures;
        } while (std::next_permutation(perm.begin(), perm.end()));

        const auto edgeless = Dag::edgeless(n);
        for_each_ordered_dag(n, [&](const Dag& g1) {
            // Connected skeleton, by union-find over the edges.
            std::vector<NodeId> root(n);
            std::iota(root.begin(), root.end(), 0);
            auto find = [&](NodeId v) {
                while (root[v] != v) v = root[v] = root[root[v]];
                return v;
            };
            for (const auto& [a, b] : g1.edges()) root[find(a)] = find(b);
            bool connected = true;
            for (NodeId v = 1; v < n; ++v) connected = connected && find(v) == find(0);
            if (!connected) return;
            ++checks;
            if (inclusion_implies(g1, edgeless)) ++failures;
        });
    }
    return {failures == 0, std::to_string(checks) + " inclusion checks, " + std::to_string(failures) + " wrong"};
}

struct Criterion {
    const char* title;
    double time_limit;
    Check (*run)();
};

}  // namespace

std::vector<CriterionResult> run_acceptance(const std::function<void(const CriterionResult&)>& on_result) {
    static const Criterion criteria[] = {
        {"d-separation soundness on sampled distributions", 60, dsep_soundness},
        {"d-separation completeness spot-check via the oracle", 300, dsep_completeness},
        {"reachability matches path enumeration, all dags n <= 5", 60, dsep_cross_validation},
        {"combining two networks' CIs exceeds their union", 1, combination_phenomenon},
        {"majorization under a smaller support", 120, smaller_support},
        {"uniform extension equivalence at ell=2, n=2", 60, iid_extend_equivalence},
        {"sufficient statistic add/insert lemmas", 60, sufficient_statistic_lemmas},
        {"figure 2 reduction fixture", 30, figure2_fixture},
        {"implication B witness satisfies every antecedent", 120, implication_b_witnesses},
        {"k=1 inclusion sweep n <= 4", 60, inclusion_sweep},
    };
    std::vector<CriterionResult> out;
    int id = 0;
    for (const auto& c : criteria) {
        CriterionResult r;
        r.id = ++id;
        r.title = c.title;
        r.time_limit = c.time_limit;
        const auto start = Clock::now();
        try {
            const auto o = c.run();
            r.passed = o.passed;
            r.detail = o.detail;
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
        if (r.seconds > r.time_limit) {
            r.passed = false;
            r.detail += "; over the time limit";
        }
        if (on_result) on_result(r);
        out.push_back(std::move(r));
    }
    return out;
}

std::string format_result(const CriterionResult& r) {
    char head[16];
    std::snprintf(head, sizeof head, "%s [%2d] ", r.passed ? "PASS" : "FAIL", r.id);
    char tail[64];
    std::snprintf(tail, sizeof tail, " (%.1f s / %.0f s)", r.seconds, r.time_limit);
    return head + r.title + ": " + r.detail + tail;
}

}  // namespace bnci
