#include "bnci/sampling.hpp"

#include <cmath>
#include <random>

#include "bnci/error.hpp"

namespace bnci {

namespace {

// Conditional tables indexed [node][parent configuration * card + value].
template <class Mass, class Draw>
std::vector<std::vector<Mass>> draw_tables(const Dag& g, const std::vector<Value>& cards, Draw&& draw) {
    std::vector<std::vector<Mass>> tables(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v) {
        std::uint64_t configs = 1;
        for (NodeId u : g.parents(v)) configs *= cards[u];
        auto& t = tables[v];
        t.reserve(configs * cards[v]);
        for (std::uint64_t cfg = 0; cfg < configs; ++cfg) {
            std::vector<Mass> row(cards[v]);
            Mass total = 0;
            for (auto& x : row) {
                x = draw();
                total += x;
            }
            for (auto& x : row) t.push_back(x / total);
        }
    }
    return tables;
}

template <class Mass>
std::vector<std::pair<Outcome, Mass>> joint_from_tables(const Dag& g, const std::vector<Value>& cards,
                                                        const std::vector<std::vector<Mass>>& tables) {
    std::uint64_t states = 1;
    for (Value c : cards) {
        states *= c;
        if (states > kStateGuard) throw Error(ErrorKind::GuardExceeded, "too many joint states to sample");
    }
    std::vector<std::pair<Outcome, Mass>> entries;
    entries.reserve(states);
    Outcome x(cards.size(), 0);
    for (std::uint64_t s = 0; s < states; ++s) {
        Mass m = 1;
        for (NodeId v = 0; v < g.node_count(); ++v) {
            std::uint64_t cfg = 0;
            for (NodeId u : g.parents(v)) cfg = cfg * cards[u] + x[u];
            m *= tables[v][cfg * cards[v] + x[v]];
        }
        entries.emplace_back(x, std::move(m));
        for (std::size_t i = x.size(); i-- > 0;) {
            if (++x[i] < cards[i]) break;
            x[i] = 0;
        }
    }
    return entries;
}

void check_shape(const Dag& g, const std::vector<Value>& cards) {
    if (cards.size() != g.node_count()) {
        throw Error(ErrorKind::NodeCountMismatch, "one cardinality per node is required");
    }
    std::uint64_t states = 1;
    for (Value c : cards) {
        if (c == 0) throw Error(ErrorKind::InvalidStatement, "cardinalities must be positive");
        states *= c;
        if (states > kStateGuard) throw Error(ErrorKind::GuardExceeded, "too many joint states to sample");
    }
}

}  // namespace

JointDist sample_factorized(const Dag& g, const std::vector<Value>& cards, std::uint64_t seed) {
    check_shape(g, cards);
    std::mt19937_64 rng(seed);
    // Exponential variates normalized per row give a flat Dirichlet draw.
    auto draw = [&rng]() {
        const double u = static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
        return -std::log(u);
    };
    const auto tables = draw_tables<double>(g, cards, draw);
    return JointDist(g.labels(), cards, joint_from_tables(g, cards, tables), kDefaultTolerance);
}

JointDist sample_factorized_exact(const Dag& g, const std::vector<Value>& cards, std::uint64_t seed,
                                  std::uint32_t max_weight) {
    check_shape(g, cards);
    if (max_weight == 0) throw Error(ErrorKind::InvalidStatement, "max_weight must be positive");
    std::mt19937_64 rng(seed);
    auto draw = [&rng, max_weight]() { return Rational(static_cast<unsigned long>(rng() % max_weight + 1)); };
    const auto tables = draw_tables<Rational>(g, cards, draw);
    return JointDist(g.labels(), cards, joint_from_tables(g, cards, tables));
}

}  // namespace bnci
