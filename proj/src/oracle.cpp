#include "bnci/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <random>
#include <sstream>

#include "bnci/error.hpp"
#include "bnci/independence.hpp"

namespace bnci {

namespace {

constexpr std::uint64_t kDenseLimit = 4096;    // joint states for the continuous family
constexpr std::uint64_t kNoiseLimit = 1 << 14;  // noise configurations for the discrete family
constexpr std::uint64_t kTableLimit = 1 << 16;  // entries in one node's table


class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    std::uint64_t bits() { return engine_(); }
    std::uint64_t below(std::uint64_t n) { return n <= 1 ? 0 : engine_() % n; }
    double uniform() { return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53; }  // (0, 1]
    bool chance(double p) { return uniform() <= p; }
    double normal() {
        const double u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

private:
    std::mt19937_64 engine_;
};

std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}


/// Maps a full mixed-radix code to the code of a sub-vector.
class Projector {
public:
    Projector() = default;
    Projector(const NodeSet& vars, const std::vector<Value>& cards, const std::vector<std::uint64_t>& strides) {
        for (NodeId v : vars) parts_.push_back({strides[v], cards[v]});
    }
    std::uint64_t operator()(std::uint64_t code) const {
        std::uint64_t sub = 0;
        for (const auto& [stride, card] : parts_) sub = sub * card + (code / stride) % card;
        return sub;
    }

private:
    std::vector<std::pair<std::uint64_t, Value>> parts_;
};

template <class W>
struct Row {
    std::uint64_t c, a, b;
    W w;
};

// Largest |n(a,b,c) n(c) - n(a,c) n(b,c)| over the support of (A, B) given C.
template <class W>
W ci_deviation(const std::vector<std::uint64_t>& codes, const std::vector<W>& weights, const Projector& pa,
               const Projector& pb, const Projector& pc) {
    std::vector<Row<W>> rows;
    rows.reserve(codes.size());
    for (std::size_t i = 0; i < codes.size(); ++i) rows.push_back({pc(codes[i]), pa(codes[i]), pb(codes[i]), weights[i]});
    std::sort(rows.begin(), rows.end(), [](const Row<W>& x, const Row<W>& y) {
        return std::tie(x.c, x.a, x.b) < std::tie(y.c, y.a, y.b);
    });
    std::size_t out = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (out > 0 && rows[out - 1].c == rows[i].c && rows[out - 1].a == rows[i].a && rows[out - 1].b == rows[i].b) {
            rows[out - 1].w += rows[i].w;
        } else {
            rows[out++] = rows[i];
        }
    }
    rows.resize(out);

    W worst = 0;
    std::vector<std::pair<std::uint64_t, W>> as;
    std::vector<std::pair<std::uint64_t, W>> bs;
    for (std::size_t s = 0; s < rows.size();) {
        std::size_t e = s;
        W nc = 0;
        as.clear();
        bs.clear();
        while (e < rows.size() && rows[e].c == rows[s].c) {
            if (!as.empty() && as.back().first == rows[e].a) {
                as.back().second += rows[e].w;
            } else {
                as.emplace_back(rows[e].a, rows[e].w);
            }
            bs.emplace_back(rows[e].b, rows[e].w);
            nc += rows[e].w;
            ++e;
        }
        std::sort(bs.begin(), bs.end());
        std::size_t bo = 0;
        for (std::size_t k = 0; k < bs.size(); ++k) {
            if (bo > 0 && bs[bo - 1].first == bs[k].first) {
                bs[bo - 1].second += bs[k].second;
            } else {
                bs[bo++] = bs[k];
            }
        }
        bs.resize(bo);
        for (const auto& [a, na] : as) {
            for (const auto& [b, nb] : bs) {
                const auto it = std::lower_bound(rows.begin() + s, rows.begin() + e, std::pair(a, b),
                                                 [](const Row<W>& r, const std::pair<std::uint64_t, std::uint64_t>& k) {
                                                     return std::pair(r.a, r.b) < k;
                                                 });
                const W nab = (it != rows.begin() + e && it->a == a && it->b == b) ? it->w : W(0);
                const W lhs = nab * nc;
                const W rhs = na * nb;
                const W dev = lhs > rhs ? lhs - rhs : rhs - lhs;
                if (dev > worst) worst = dev;
            }
        }
        s = e;
    }
    return worst;
}

// Mass off the most likely value of b, summed over outcomes of A.
template <class W>
W fd_deviation(const std::vector<std::uint64_t>& codes, const std::vector<W>& weights, const Projector& pa,
               const Projector& pb) {
    std::vector<Row<W>> rows;
    rows.reserve(codes.size());
    for (std::size_t i = 0; i < codes.size(); ++i) rows.push_back({0, pa(codes[i]), pb(codes[i]), weights[i]});
    std::sort(rows.begin(), rows.end(),
              [](const Row<W>& x, const Row<W>& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
    W off = 0;
    for (std::size_t s = 0; s < rows.size();) {
        W total = 0;
        W best = 0;
        std::size_t e = s;
        while (e < rows.size() && rows[e].a == rows[s].a) {
            W run = 0;
            const auto b = rows[e].b;
            while (e < rows.size() && rows[e].a == rows[s].a && rows[e].b == b) run += rows[e++].w;
            total += run;
            best = std::max(best, run);
        }
        off += total - best;
        s = e;
    }
    return off;
}


struct CiConstraint {
    CiStatement stmt;
    Projector a, b, c;
};

struct FdConstraint {
    FunctionalDependency fd;
    Projector a, b;
};

struct Problem {
    std::size_t n = 0;
    std::vector<Value> cards;
    std::vector<std::uint64_t> strides;
    std::vector<std::string> labels;
    std::vector<CiConstraint> cis;
    std::vector<FdConstraint> fds;
    CiConstraint target;
    const Dag* g1 = nullptr;  // network mode: search space factorizes along g1
    const Dag* g2 = nullptr;

    CiConstraint make_ci(const CiStatement& s) const {
        return {s, Projector(s.a(), cards, strides), Projector(s.b(), cards, strides), Projector(s.c(), cards, strides)};
    }
};

struct Scores {
    std::vector<double> antecedents;
    double target = 0.0;
};


/// One node's conditional law: either a table of probability rows indexed by
/// parent configuration, or a deterministic function of the parents and an
/// independent uniform noise variable.
struct NodeModel {
    std::vector<NodeId> parents;
    std::uint64_t configs = 1;
    bool deterministic = false;
    bool pinned = false;  // deterministic function imposed by a functional dependency
    Value noise = 1;
    std::vector<Value> table;   // deterministic: [cfg * noise + e]
    std::vector<double> probs;  // stochastic: [cfg * card + value]
};

struct Model {
    std::vector<NodeId> order;  // topological
    std::vector<NodeModel> nodes;
};

std::uint64_t parent_config(const NodeModel& m, const std::vector<Value>& x, const std::vector<Value>& cards) {
    std::uint64_t cfg = 0;
    for (NodeId u : m.parents) cfg = cfg * cards[u] + x[u];
    return cfg;
}

std::uint64_t encode(const std::vector<Value>& x, const std::vector<std::uint64_t>& strides) {
    std::uint64_t code = 0;
    for (std::size_t v = 0; v < x.size(); ++v) code += x[v] * strides[v];
    return code;
}

/// Parent sets and topological order of the search structure for one restart.
struct Structure {
    std::vector<NodeId> order;
    std::vector<std::vector<NodeId>> parents;
    std::vector<char> pinned;
};

Structure network_structure(const Dag& g) {
    Structure s;
    s.order = g.topological_order();
    s.parents.resize(g.node_count());
    s.pinned.assign(g.node_count(), 0);
    for (NodeId v = 0; v < g.node_count(); ++v) s.parents[v].assign(g.parents(v).begin(), g.parents(v).end());
    return s;
}

// Random order placing FD determinants before their dependents where the
// dependency graph allows; such dependents become pinned functions of their
// determinants. max_parents == 0 means every predecessor is a parent.
Structure random_structure(const Problem& pr, Rng& rng, std::size_t max_parents) {
    const std::size_t n = pr.n;
    std::vector<std::uint64_t> priority(n);
    for (auto& p : priority) p = rng.bits();
    std::vector<int> pin_of(n, -1);
    for (std::size_t j = 0; j < pr.fds.size(); ++j) {
        const NodeId b = pr.fds[j].fd.b;
        if (pin_of[b] < 0) pin_of[b] = static_cast<int>(j);
    }
    Structure s;
    s.parents.resize(n);
    s.pinned.assign(n, 0);
    std::vector<char> placed(n, 0);
    while (s.order.size() < n) {
        auto ready = [&](NodeId v) {
            if (pin_of[v] < 0) return true;
            for (NodeId u : pr.fds[static_cast<std::size_t>(pin_of[v])].fd.a) {
                if (!placed[u]) return false;
            }
            return true;
        };
        std::optional<NodeId> pick;
        for (NodeId v = 0; v < n; ++v) {
            if (!placed[v] && ready(v) && (!pick || priority[v] < priority[*pick])) pick = v;
        }
        if (!pick) {
            // Cyclic dependencies: release the lowest-priority pending pin.
            std::optional<NodeId> drop;
            for (NodeId v = 0; v < n; ++v) {
                if (!placed[v] && (!drop || priority[v] < priority[*drop])) drop = v;
            }
            pin_of[*drop] = -1;
            continue;
        }
        const NodeId v = *pick;
        if (pin_of[v] >= 0) {
            const auto& a = pr.fds[static_cast<std::size_t>(pin_of[v])].fd.a;
            s.parents[v].assign(a.begin(), a.end());
            s.pinned[v] = 1;
        } else {
            std::vector<NodeId> preds = s.order;
            if (max_parents > 0 && preds.size() > max_parents) {
                for (std::size_t i = 0; i < max_parents; ++i) {
                    std::swap(preds[i], preds[i + rng.below(preds.size() - i)]);
                }
                preds.resize(rng.below(max_parents + 1));
            }
            std::sort(preds.begin(), preds.end());
            s.parents[v] = std::move(preds);
        }
        placed[v] = 1;
        s.order.push_back(v);
    }
    return s;
}

std::optional<Model> make_model(const Problem& pr, const Structure& s) {
    Model m;
    m.order = s.order;
    m.nodes.resize(pr.n);
    for (NodeId v = 0; v < pr.n; ++v) {
        auto& node = m.nodes[v];
        node.parents = s.parents[v];
        for (NodeId u : node.parents) {
            node.configs *= pr.cards[u];
            if (node.configs * pr.cards[v] > kTableLimit) return std::nullopt;
        }
        node.pinned = s.pinned[v] != 0;
    }
    return m;
}

void randomize_row(std::vector<double>& probs, std::uint64_t cfg, Value card, Rng& rng) {
    double total = 0.0;
    for (Value x = 0; x < card; ++x) total += probs[cfg * card + x] = -std::log(rng.uniform());
    for (Value x = 0; x < card; ++x) probs[cfg * card + x] /= total;
}

void init_deterministic(NodeModel& node, Value card, Value noise, Rng& rng) {
    node.deterministic = true;
    node.noise = noise;
    node.table.resize(node.configs * noise);
    for (auto& t : node.table) t = static_cast<Value>(rng.below(card));
}


struct Support {
    std::vector<std::uint64_t> codes;
    std::vector<std::int64_t> counts;  // discrete family
    std::vector<double> probs;         // continuous family
    std::int64_t total = 0;
};

std::optional<Support> discrete_support(const Problem& pr, const Model& m) {
    std::vector<NodeId> noisy;
    std::uint64_t configs = 1;
    for (NodeId v : m.order) {
        if (m.nodes[v].noise > 1) {
            noisy.push_back(v);
            configs *= m.nodes[v].noise;
            if (configs > kNoiseLimit) return std::nullopt;
        }
    }
    std::vector<Value> noise(pr.n, 0);
    std::vector<Value> x(pr.n, 0);
    std::vector<std::uint64_t> raw;
    raw.reserve(configs);
    for (std::uint64_t k = 0; k < configs; ++k) {
        for (NodeId v : m.order) {
            const auto& node = m.nodes[v];
            const auto cfg = parent_config(node, x, pr.cards);
            x[v] = node.table[cfg * node.noise + noise[v]];
        }
        raw.push_back(encode(x, pr.strides));
        for (std::size_t i = noisy.size(); i-- > 0;) {
            const NodeId v = noisy[i];
            if (++noise[v] < m.nodes[v].noise) break;
            noise[v] = 0;
        }
    }
    std::sort(raw.begin(), raw.end());
    Support s;
    s.total = static_cast<std::int64_t>(configs);
    for (std::size_t i = 0; i < raw.size();) {
        std::size_t j = i;
        while (j < raw.size() && raw[j] == raw[i]) ++j;
        s.codes.push_back(raw[i]);
        s.counts.push_back(static_cast<std::int64_t>(j - i));
        i = j;
    }
    return s;
}

Support dense_support(const Problem& pr, const Model& m) {
    std::uint64_t states = 1;
    for (Value c : pr.cards) states *= c;
    Support s;
    std::vector<Value> x(pr.n, 0);
    for (std::uint64_t k = 0; k < states; ++k) {
        double p = 1.0;
        for (NodeId v : m.order) {
            const auto& node = m.nodes[v];
            const auto cfg = parent_config(node, x, pr.cards);
            if (node.deterministic) {
                p *= node.table[cfg] == x[v] ? 1.0 : 0.0;
            } else {
                p *= node.probs[cfg * pr.cards[v] + x[v]];
            }
            if (p == 0.0) break;
        }
        if (p > 0.0) {
            s.codes.push_back(encode(x, pr.strides));
            s.probs.push_back(p);
        }
        for (std::size_t i = x.size(); i-- > 0;) {
            if (++x[i] < pr.cards[i]) break;
            x[i] = 0;
        }
    }
    return s;
}

Scores score(const Problem& pr, const Support& s) {
    Scores out;
    if (!s.counts.empty()) {
        const double n = static_cast<double>(s.total);
        for (const auto& c : pr.cis) {
            out.antecedents.push_back(static_cast<double>(ci_deviation(s.codes, s.counts, c.a, c.b, c.c)) / (n * n));
        }
        for (const auto& f : pr.fds) {
            out.antecedents.push_back(static_cast<double>(fd_deviation(s.codes, s.counts, f.a, f.b)) / n);
        }
        out.target = static_cast<double>(ci_deviation(s.codes, s.counts, pr.target.a, pr.target.b, pr.target.c)) / (n * n);
    } else {
        for (const auto& c : pr.cis) out.antecedents.push_back(ci_deviation(s.codes, s.probs, c.a, c.b, c.c));
        for (const auto& f : pr.fds) out.antecedents.push_back(fd_deviation(s.codes, s.probs, f.a, f.b));
        out.target = ci_deviation(s.codes, s.probs, pr.target.a, pr.target.b, pr.target.c);
    }
    return out;
}

bool feasible(const Scores& sc, const OracleBudget& budget) {
    for (double r : sc.antecedents) {
        if (!(r < budget.eps_sat)) return false;
    }
    return sc.target > budget.delta_vio;
}

double continuous_objective(const Scores& sc, double lambda) {
    double sq = 0.0;
    for (double r : sc.antecedents) sq += r * r;
    return sq - lambda * sc.target;
}

double discrete_objective(const Scores& sc, const OracleBudget& budget) {
    double obj = 0.0;
    for (double r : sc.antecedents) {
        if (r > 0.0) obj += 1.0 + r;
    }
    if (!(sc.target > budget.delta_vio)) obj += 1.0;
    return obj - budget.lambda * sc.target;
}


JointDist to_dist(const Problem& pr, const Support& s) {
    std::vector<std::pair<Outcome, Rational>> exact;
    std::vector<std::pair<Outcome, double>> approx;
    for (std::size_t i = 0; i < s.codes.size(); ++i) {
        Outcome x(pr.n);
        for (std::size_t v = 0; v < pr.n; ++v) x[v] = static_cast<Value>((s.codes[i] / pr.strides[v]) % pr.cards[v]);
        if (!s.counts.empty()) {
            exact.emplace_back(std::move(x), Rational(mpz_class(s.counts[i]), mpz_class(s.total)));
        } else {
            approx.emplace_back(std::move(x), s.probs[i]);
        }
    }
    if (!s.counts.empty()) return JointDist(pr.labels, pr.cards, std::move(exact));
    return JointDist(pr.labels, pr.cards, std::move(approx), 1e-6);
}

/// Re-checks a candidate with the distribution predicates; the search's own
/// kernels never certify a result.
std::optional<std::vector<ConstraintResidual>> verify(const Problem& pr, const JointDist& p,
                                                      const OracleBudget& budget) {
    std::vector<ConstraintResidual> report;
    bool ok = true;
    auto note = [&](std::string text, double residual, bool satisfied) {
        ok = ok && satisfied;
        report.push_back({std::move(text), residual, satisfied});
    };
    if (pr.g1 != nullptr) {
        for (const auto* g : {pr.g1, pr.g2}) {
            const std::string name = g == pr.g1 ? "network1 " : "network2 ";
            for (const auto& stmt : local_ci_set(*g)) {
                const double r = check_ci(p, stmt).residual;
                note(name + format_ci(stmt, pr.labels), r, r < budget.eps_sat);
            }
        }
    } else {
        for (const auto& c : pr.cis) {
            const double r = check_ci(p, c.stmt).residual;
            note("given " + format_ci(c.stmt, pr.labels), r, r < budget.eps_sat);
        }
        for (const auto& f : pr.fds) {
            const double r = check_fd(p, f.fd.a, f.fd.b).residual;
            std::string text = "fd ";
            for (std::size_t i = 0; i < f.fd.a.size(); ++i) text += (i ? "," : "") + pr.labels[f.fd.a[i]];
            text += " -> " + pr.labels[f.fd.b];
            note(text, r, r < budget.eps_sat);
        }
    }
    const double t = check_ci(p, pr.target.stmt).residual;
    note("target " + format_ci(pr.target.stmt, pr.labels), t, t > budget.delta_vio);
    if (!ok) return std::nullopt;
    return report;
}

class Searcher {
public:
    Searcher(const Problem& pr, const OracleBudget& budget) : pr_(pr), budget_(budget) {}

    std::optional<Counterexample> run() {
        for (std::size_t r = 0; r < budget_.restarts; ++r) {
            Rng rng(mix(budget_.seed ^ mix(r)));
            if (auto found = continuous(rng)) return finish(*found, r);
            if (auto found = discrete(rng)) return finish(*found, r);
        }
        return std::nullopt;
    }

private:
    struct Found {
        JointDist dist;
        std::vector<ConstraintResidual> report;
    };

    Counterexample finish(Found& f, std::size_t restart) { return {std::move(f.dist), std::move(f.report), restart}; }

    std::optional<Found> accept(const Support& s) {
        auto p = to_dist(pr_, s);
        auto report = verify(pr_, p, budget_);
        if (!report) return std::nullopt;
        return Found{std::move(p), std::move(*report)};
    }

    Structure structure(Rng& rng, std::size_t max_parents) {
        return pr_.g1 != nullptr ? network_structure(*pr_.g1) : random_structure(pr_, rng, max_parents);
    }

    // Factorized tables with multiplicative row perturbations.
    std::optional<Found> continuous(Rng& rng) {
        std::uint64_t states = 1;
        for (Value c : pr_.cards) {
            states *= c;
            if (states > kDenseLimit) return std::nullopt;
        }
        auto model = make_model(pr_, structure(rng, 0));
        if (!model) return std::nullopt;
        for (NodeId v = 0; v < pr_.n; ++v) {
            auto& node = model->nodes[v];
            if (node.pinned) {
                init_deterministic(node, pr_.cards[v], 1, rng);
            } else {
                node.probs.assign(node.configs * pr_.cards[v], 0.0);
                for (std::uint64_t cfg = 0; cfg < node.configs; ++cfg) randomize_row(node.probs, cfg, pr_.cards[v], rng);
            }
        }
        auto support = dense_support(pr_, *model);
        auto sc = score(pr_, support);
        double best = continuous_objective(sc, budget_.lambda);
        double sigma = 0.5;
        for (std::size_t it = 0;; ++it) {
            if (feasible(sc, budget_)) {
                if (auto f = accept(support)) return f;
            }
            if (it == budget_.iterations) break;
            const NodeId v = static_cast<NodeId>(rng.below(pr_.n));
            auto& node = model->nodes[v];
            const Value card = pr_.cards[v];
            const auto cfg = rng.below(node.configs);
            const auto saved_table = node.table;
            const auto saved_probs = node.probs;
            if (node.deterministic) {
                node.table[cfg] = static_cast<Value>(rng.below(card));
            } else {
                double total = 0.0;
                for (Value x = 0; x < card; ++x) {
                    auto& q = node.probs[cfg * card + x];
                    q *= std::exp(sigma * rng.normal());
                    total += q;
                }
                for (Value x = 0; x < card; ++x) node.probs[cfg * card + x] /= total;
            }
            auto next = dense_support(pr_, *model);
            auto next_sc = score(pr_, next);
            const double obj = continuous_objective(next_sc, budget_.lambda);
            if (obj < best) {
                best = obj;
                support = std::move(next);
                sc = std::move(next_sc);
            } else {
                node.table = saved_table;
                node.probs = saved_probs;
                sigma = std::max(0.01, sigma * 0.995);
            }
        }
        return std::nullopt;
    }

    // Structural equations x_v = f_v(parents, noise_v) with uniform noise;
    // masses are counts over noise configurations, so checks are exact.
    std::optional<Found> discrete(Rng& rng) {
        auto model = make_model(pr_, structure(rng, 3));
        if (!model) return std::nullopt;
        for (NodeId v = 0; v < pr_.n; ++v) {
            auto& node = model->nodes[v];
            const bool root = node.parents.empty();
            const bool noisy = !node.pinned && rng.chance(root ? 0.75 : 0.25);
            init_deterministic(node, pr_.cards[v], noisy ? pr_.cards[v] : 1, rng);
        }
        auto support = discrete_support(pr_, *model);
        if (!support) return std::nullopt;
        auto sc = score(pr_, *support);
        double best = discrete_objective(sc, budget_);
        for (std::size_t it = 0;; ++it) {
            if (feasible(sc, budget_)) {
                if (auto f = accept(*support)) return f;
            }
            if (it == budget_.iterations) break;
            const NodeId v = static_cast<NodeId>(rng.below(pr_.n));
            auto& node = model->nodes[v];
            const NodeModel saved = node;
            mutate(node, v, rng);
            auto next = discrete_support(pr_, *model);
            if (!next) {
                node = saved;
                continue;
            }
            auto next_sc = score(pr_, *next);
            const double obj = discrete_objective(next_sc, budget_);
            if (obj <= best) {
                best = obj;
                support = std::move(next);
                sc = std::move(next_sc);
            } else {
                node = saved;
            }
        }
        return std::nullopt;
    }

    void mutate(NodeModel& node, NodeId v, Rng& rng) {
        const Value card = pr_.cards[v];
        const auto roll = rng.below(10);
        if (roll < 6 || node.pinned) {
            node.table[rng.below(node.table.size())] = static_cast<Value>(rng.below(card));
        } else if (roll < 7) {
            for (auto& t : node.table) t = static_cast<Value>(rng.below(card));
        } else if (roll < 9) {
            // Toggle the noise input, keeping the function otherwise intact.
            const Value noise = node.noise > 1 ? 1 : card;
            std::vector<Value> table(node.configs * noise);
            for (std::uint64_t cfg = 0; cfg < node.configs; ++cfg) {
                for (Value e = 0; e < noise; ++e) table[cfg * noise + e] = node.table[cfg * node.noise];
            }
            node.table = std::move(table);
            node.noise = noise;
            if (noise > 1) node.table[rng.below(node.table.size())] = static_cast<Value>(rng.below(card));
        } else if (!node.parents.empty()) {
            // Copy one parent, shifted by the noise when there is any.
            const auto k = rng.below(node.parents.size());
            std::uint64_t below = 1;
            for (std::size_t i = k + 1; i < node.parents.size(); ++i) below *= pr_.cards[node.parents[i]];
            const Value pcard = pr_.cards[node.parents[k]];
            for (std::uint64_t cfg = 0; cfg < node.configs; ++cfg) {
                const auto pv = static_cast<Value>((cfg / below) % pcard);
                for (Value e = 0; e < node.noise; ++e) node.table[cfg * node.noise + e] = (pv + e) % card;
            }
        }
    }

    const Problem& pr_;
    const OracleBudget& budget_;
};

Problem base_problem(std::size_t n, const OracleBudget& budget, std::vector<std::string> labels,
                     const CiStatement& target) {
    budget.validate(n);
    target.check_within(n);
    Problem pr{.n = n, .cards = budget.cardinalities, .strides = {}, .labels = std::move(labels), .cis = {},
               .fds = {}, .target = {target, {}, {}, {}}};
    if (pr.cards.empty()) pr.cards.assign(n, 2);
    if (pr.labels.empty()) pr.labels = index_labels(n);
    if (pr.labels.size() != n) throw Error(ErrorKind::NodeCountMismatch, "label count differs from variable count");
    pr.strides.assign(n, 1);
    for (std::size_t v = n; v-- > 1;) {
        pr.strides[v - 1] = pr.strides[v] * pr.cards[v];
        if (pr.strides[v - 1] > kStateGuard) throw Error(ErrorKind::GuardExceeded, "too many joint states");
    }
    pr.target = pr.make_ci(target);
    return pr;
}

}  // namespace

void OracleBudget::validate(std::size_t n) const {
    if (restarts == 0 || iterations == 0) throw Error(ErrorKind::InvalidBudget, "restarts and iterations must be positive");
    if (!(eps_sat < delta_vio)) throw Error(ErrorKind::InvalidBudget, "eps_sat must be below delta_vio");
    if (!cardinalities.empty() && cardinalities.size() != n) {
        throw Error(ErrorKind::InvalidBudget, "one cardinality per variable is required");
    }
    for (Value c : cardinalities) {
        if (c == 0) throw Error(ErrorKind::InvalidBudget, "cardinalities must be positive");
    }
}

std::optional<Counterexample> refute_implication(std::size_t n, const CiSet& antecedent_cis,
                                                 const std::vector<FunctionalDependency>& antecedent_fds,
                                                 const CiStatement& target, const OracleBudget& budget,
                                                 std::vector<std::string> labels) {
    Problem pr = base_problem(n, budget, std::move(labels), target);
    for (const auto& s : antecedent_cis) {
        s.check_within(n);
        pr.cis.push_back(pr.make_ci(s));
    }
    for (const auto& f : antecedent_fds) {
        if (f.b >= n || (!f.a.empty() && f.a.max() >= n)) {
            throw Error(ErrorKind::InvalidStatement, "functional dependency index out of range");
        }
        if (f.a.contains(f.b)) throw Error(ErrorKind::IndexOverlap, "dependent variable is among the determinants");
        pr.fds.push_back({f, Projector(f.a, pr.cards, pr.strides), Projector(NodeSet{f.b}, pr.cards, pr.strides)});
    }
    return Searcher(pr, budget).run();
}

std::optional<Counterexample> refute_network_implication(const Dag& g1, const Dag& g2, const CiStatement& target,
                                                         const OracleBudget& budget) {
    if (g1.node_count() != g2.node_count()) throw Error(ErrorKind::NodeCountMismatch, "networks have different node counts");
    Problem pr = base_problem(g1.node_count(), budget, g1.labels(), target);
    pr.g1 = &g1;
    pr.g2 = &g2;
    // g1 holds by construction of the search space; g2 is scored.
    for (const auto& s : local_ci_set(g2)) pr.cis.push_back(pr.make_ci(s));
    return Searcher(pr, budget).run();
}

std::string format_report(const std::vector<ConstraintResidual>& report) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(3);
    for (const auto& line : report) {
        os << (line.satisfied ? "ok       " : "violated ") << line.residual << "  " << line.description << '\n';
    }
    return os.str();
}

}  // namespace bnci
