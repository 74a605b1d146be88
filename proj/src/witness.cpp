#include "bnci/witness.hpp"

#include <algorithm>
#include <map>

#include "bnci/error.hpp"
#include "bnci/independence.hpp"

namespace bnci {

namespace {

NodeSet zero_based(const std::vector<std::uint32_t>& indices) {
    std::vector<NodeId> ids;
    for (auto i : indices) ids.push_back(i - 1);
    return NodeSet(std::move(ids));
}

std::string describe(const FdEntry& fd) {
    std::string out = "fd";
    for (auto i : fd.a) out += " " + std::to_string(i);
    return out + " -> " + std::to_string(fd.b);
}

void require_exact(const JointDist& p, std::size_t n) {
    if (p.variable_count() != n) {
        throw Error(ErrorKind::NodeCountMismatch, "distribution has " + std::to_string(p.variable_count()) +
                                                      " variables, instance has " + std::to_string(n));
    }
    if (!p.exact()) throw Error(ErrorKind::InvalidInstance, "witness construction needs an exact distribution");
}

void check_fds(const std::vector<FdEntry>& fds, const JointDist& p, std::vector<std::string>& out) {
    for (const auto& fd : fds) {
        if (!check_fd(p, zero_based(fd.a), fd.b - 1).holds) out.push_back(describe(fd));
    }
}

// ell^e, or nullopt once it passes `limit`.
std::optional<std::uint64_t> bounded_power(std::uint64_t ell, std::uint64_t e, std::uint64_t limit) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < e; ++i) {
        r *= ell;
        if (r > limit) return std::nullopt;
    }
    return r;
}

}  // namespace

std::vector<std::string> violated_antecedents(const ImplicationInstance& inst, const JointDist& p) {
    inst.validate();
    require_exact(p, inst.n);
    std::vector<std::string> out;
    if (inst.c1.size() >= 2 && !check_mutual_independence(p, zero_based(inst.c1)).holds) {
        out.push_back("group1 mutual independence");
    }
    if (inst.c2.size() >= 2 && !check_mutual_independence(p, zero_based(inst.c2)).holds) {
        out.push_back("group2 mutual independence");
    }
    check_fds(inst.fds, p, out);
    return out;
}

std::vector<std::string> violated_antecedents(const ImplicationAInstance& inst, const JointDist& p) {
    inst.validate();
    require_exact(p, inst.n);
    std::vector<std::string> out;
    const Value ell = p.cards().front();
    for (NodeId v = 0; v < inst.n; ++v) {
        const auto pmf = exact_pmf(p, v);
        const bool uniform = p.cards()[v] == ell &&
                             std::all_of(pmf.begin(), pmf.end(), [ell](const Rational& q) { return q == Rational(1, ell); });
        if (!uniform) out.push_back("V" + std::to_string(v + 1) + " uniform with cardinality " + std::to_string(ell));
    }
    const auto m = std::min<std::uint32_t>(inst.n, 3);
    const NodeSet base = NodeSet::range(0, m);
    if (m >= 2 && !check_mutual_independence(p, base).holds) out.push_back("base variables mutually independent");
    for (NodeId v = m; v < inst.n; ++v) {
        if (!check_fd(p, base, v).holds) out.push_back("V" + std::to_string(v + 1) + " determined by the base variables");
    }
    check_fds(inst.fds, p, out);
    for (const auto& [c0, c1] : inst.pairwise) {
        if (!check_ci(p, CiStatement({c0 - 1}, {}, {c1 - 1})).holds) {
            out.push_back("pairwise " + std::to_string(c0) + " " + std::to_string(c1));
        }
    }
    return out;
}

JointDist trivial_witness(const ImplicationInstance& inst, const JointDist& pv) {
    inst.validate();
    if (!inst.target) throw Error(ErrorKind::InvalidInstance, "instance has no target");
    if (!inst.b0_prime) throw Error(ErrorKind::MissingDuplicate, "instance has no duplicated target variable");
    if (const auto bad = violated_antecedents(inst, pv); !bad.empty()) {
        std::string msg = "pV violates:";
        for (const auto& b : bad) msg += " [" + b + "]";
        throw Error(ErrorKind::AntecedentViolated, msg);
    }
    const RoleLayout layout{inst.n, static_cast<std::uint32_t>(inst.fds.size())};
    const auto roles = layout.roles();
    std::vector<std::string> labels;
    std::vector<Value> cards;
    for (const auto& r : roles) {
        labels.push_back(r.label());
        cards.push_back(pv.cards()[r.i - 1]);
    }
    return pv.push_forward(std::move(labels), std::move(cards), [&roles](std::span<const Value> in, std::span<Value> out) {
        for (std::size_t k = 0; k < roles.size(); ++k) out[k] = in[roles[k].i - 1];
    });
}

std::optional<std::vector<std::vector<Value>>> iid_extend_witness(std::uint32_t ell, std::uint32_t n,
                                                                  const std::vector<std::vector<Value>>& xs) {
    if (ell == 0) throw Error(ErrorKind::InvalidInstance, "cardinality must be positive");
    const auto points = bounded_power(ell, n, kStateGuard);
    if (!points) throw Error(ErrorKind::GuardExceeded, "ell^n exceeds the state guard");
    const std::size_t k = xs.size();
    if (k > n) throw Error(ErrorKind::InvalidInstance, "more functions than base digits");
    for (const auto& x : xs) {
        if (x.size() != *points) throw Error(ErrorKind::InvalidInstance, "function length differs from ell^n");
        std::vector<Value> range(x.begin(), x.end());
        std::sort(range.begin(), range.end());
        range.erase(std::unique(range.begin(), range.end()), range.end());
        if (range.size() > ell) throw Error(ErrorKind::RangeTooLarge, "a function takes more than ell values");
    }

    // Preimage of every value tuple of (X_1..X_k), points in ascending order.
    std::map<std::vector<Value>, std::vector<std::size_t>> preimage;
    for (std::size_t v = 0; v < *points; ++v) {
        std::vector<Value> key(k);
        for (std::size_t i = 0; i < k; ++i) key[i] = xs[i][v];
        preimage[key].push_back(v);
    }
    const auto tuples = *bounded_power(ell, k, kStateGuard);
    if (preimage.size() != tuples) return std::nullopt;
    const std::size_t block = *points / tuples;
    for (const auto& [key, pts] : preimage) {
        if (pts.size() != block) return std::nullopt;
    }

    // Position inside the preimage, written in base ell, most significant first.
    const std::size_t digits = n - k;
    std::vector<std::vector<Value>> ys(digits, std::vector<Value>(*points, 0));
    for (const auto& [key, pts] : preimage) {
        for (std::size_t pos = 0; pos < pts.size(); ++pos) {
            std::size_t rest = pos;
            for (std::size_t d = digits; d-- > 0;) {
                ys[d][pts[pos]] = static_cast<Value>(rest % ell);
                rest /= ell;
            }
        }
    }
    return ys;
}

JointDist implication_b_witness(const JointDist& pv, const ImplicationAInstance& inst) {
    inst.validate();
    if (!inst.pairwise.empty()) {
        throw Error(ErrorKind::InvalidInstance, "eliminate pairwise independencies before building the witness");
    }
    require_exact(pv, inst.n);
    if (const auto bad = violated_antecedents(inst, pv); !bad.empty()) {
        std::string msg = "pV violates:";
        for (const auto& b : bad) msg += " [" + b + "]";
        throw Error(ErrorKind::AntecedentViolated, msg);
    }
    const std::uint32_t n = inst.n;
    const Value ell = pv.cards().front();
    if (!bounded_power(ell, 12 * static_cast<std::uint64_t>(n) - 1, kStateGuard)) {
        throw Error(ErrorKind::GuardExceeded, "witness would have ell^(12n-1) joint states, above 2^24");
    }
    const std::uint32_t m = std::min<std::uint32_t>(n, 3);
    const std::uint64_t base_points = static_cast<std::uint64_t>(ell) * ell * ell;
    const std::uint64_t fresh = *bounded_power(ell, 3 - m, kStateGuard);
    const std::uint64_t q_card = *bounded_power(ell, 3 * n - 2, kStateGuard);

    // vals[j][p]: value of V_{j+1} at base point p = B1 ell^2 + B2 ell + B3,
    // where (B1, B2, B3) are V_1..V_m followed by fresh uniform digits.
    std::vector<std::vector<Value>> vals(3 * n);
    std::vector<char> defined(3 * n, 0);
    for (std::uint32_t j = 0; j < std::max<std::uint32_t>(n, 3); ++j) {
        vals[j].assign(base_points, 0);
        defined[j] = 1;
    }
    for (std::size_t s = 0; s < pv.support_size(); ++s) {
        const auto o = pv.outcome(s);
        for (std::uint64_t f = 0; f < fresh; ++f) {
            Value b[3];
            std::uint64_t rest = f;
            for (std::uint32_t i = 3; i-- > 0;) {
                if (i < m) {
                    b[i] = o[i];
                } else {
                    b[i] = static_cast<Value>(rest % ell);
                    rest /= ell;
                }
            }
            const auto p = (static_cast<std::uint64_t>(b[0]) * ell + b[1]) * ell + b[2];
            for (std::uint32_t j = 0; j < n; ++j) vals[j][p] = o[j];
            for (std::uint32_t j = n; j < 3; ++j) vals[j][p] = b[j];
        }
    }

    // Complete each triple (V_i, V_{i+n}, V_{i+2n}) to a bijective image of
    // the base triple.
    for (std::uint32_t i = 0; i < n; ++i) {
        const std::uint32_t triple[3] = {i, i + n, i + 2 * n};
        std::vector<std::vector<Value>> xs;
        std::vector<std::uint32_t> missing;
        for (auto j : triple) {
            if (defined[j]) {
                xs.push_back(vals[j]);
            } else {
                missing.push_back(j);
            }
        }
        const auto ys = iid_extend_witness(ell, 3, xs);
        if (!ys) throw Error(ErrorKind::AntecedentViolated, "triple " + std::to_string(i + 1) + " cannot be extended");
        for (std::size_t d = 0; d < missing.size(); ++d) {
            vals[missing[d]] = (*ys)[d];
            defined[missing[d]] = 1;
        }
    }

    const ImplicationBLayout L{n};
    std::vector<Value> cards(L.size(), ell);
    cards[L.q() - 1] = static_cast<Value>(q_card);
    std::vector<std::pair<Outcome, Rational>> entries;
    entries.reserve(base_points * q_card);
    const Rational mass(1, static_cast<unsigned long>(base_points * q_card));
    std::vector<Value> w(3 * n + 2);
    for (std::uint64_t p = 0; p < base_points; ++p) {
        for (std::uint64_t q = 0; q < q_card; ++q) {
            Outcome o(L.size());
            o[L.q() - 1] = static_cast<Value>(q);
            auto q_digit = [&](std::uint32_t i) {  // Q_i for i = 4..3n+1
                return static_cast<Value>((q / *bounded_power(ell, i - 4, kStateGuard)) % ell);
            };
            for (std::uint32_t i = 1; i <= 3 * n; ++i) o[L.v(i) - 1] = vals[i - 1][p];
            for (std::uint32_t i = 1; i <= 3 * n; ++i) {
                w[i] = i <= 3 ? vals[i - 1][p] : (vals[i - 1][p] + q_digit(i)) % ell;
            }
            w[3 * n + 1] = (vals[0][p] + q_digit(3 * n + 1)) % ell;
            for (std::uint32_t i = 1; i <= 3 * n + 1; ++i) o[L.w(i) - 1] = w[i];
            for (std::uint32_t i = 1; i <= 3 * n; ++i) o[L.m(i) - 1] = (w[i] + w[i + 1]) % ell;
            entries.emplace_back(std::move(o), mass);
        }
    }
    JointDist out(L.labels(), std::move(cards), std::move(entries));
    if (const auto bad = violated_antecedents(build_implication_b(inst), out); !bad.empty()) {
        throw Error(ErrorKind::AntecedentViolated, "constructed witness fails " + bad.front());
    }
    return out;
}

}  // namespace bnci
