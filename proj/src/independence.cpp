#include "bnci/independence.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "bnci/error.hpp"
#include "dist_util.hpp"

namespace bnci {

namespace {

Rational abs_diff(const Rational& x, const Rational& y) { return abs(x - y); }
double abs_diff(double x, double y) { return std::abs(x - y); }
double to_double(const Rational& q) { return q.get_d(); }
double to_double(double x) { return x; }

Verdict make_verdict(const JointDist& p, double residual, bool exactly_zero) {
    if (p.exact()) return {exactly_zero, residual};
    return {residual <= p.tolerance(), residual};
}

template <class Mass>
Verdict ci_kernel(const JointDist& p, const std::vector<Mass>& masses, const CiStatement& stmt) {
    const auto ca = detail::project_codes(p, stmt.a());
    const auto cb = detail::project_codes(p, stmt.b());
    const auto cc = detail::project_codes(p, stmt.c());

    // Joint masses keyed by (c, a, b); duplicates from marginalizing the rest
    // of the variables are summed.
    std::map<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>, Mass> abc;
    for (std::size_t i = 0; i < masses.size(); ++i) abc[{cc[i], ca[i], cb[i]}] += masses[i];

    Mass worst = 0;
    auto it = abc.begin();
    while (it != abc.end()) {
        const auto c = std::get<0>(it->first);
        auto end = it;
        std::map<std::uint64_t, Mass> pa;
        std::map<std::uint64_t, Mass> pb;
        Mass pc = 0;
        for (; end != abc.end() && std::get<0>(end->first) == c; ++end) {
            pa[std::get<1>(end->first)] += end->second;
            pb[std::get<2>(end->first)] += end->second;
            pc += end->second;
        }
        for (const auto& [a, mass_a] : pa) {
            for (const auto& [b, mass_b] : pb) {
                const auto found = abc.find({c, a, b});
                const Mass joint = found == abc.end() ? Mass(0) : found->second;
                const Mass lhs = joint * pc;
                const Mass rhs = mass_a * mass_b;
                Mass dev = abs_diff(lhs, rhs);
                if (dev > worst) worst = std::move(dev);
            }
        }
        it = end;
    }
    return make_verdict(p, to_double(worst), worst == 0);
}

template <class Mass>
Verdict fd_kernel(const JointDist& p, const std::vector<Mass>& masses, const NodeSet& a, NodeId b) {
    const auto ca = detail::project_codes(p, a);
    const auto cb = detail::project_codes(p, NodeSet{b});
    std::map<std::uint64_t, std::map<std::uint64_t, Mass>> table;
    for (std::size_t i = 0; i < masses.size(); ++i) table[ca[i]][cb[i]] += masses[i];
    Mass off = 0;
    for (const auto& [key, row] : table) {
        Mass total = 0;
        Mass best = 0;
        for (const auto& [value, mass] : row) {
            total += mass;
            if (mass > best) best = mass;
        }
        off += total - best;
    }
    return make_verdict(p, to_double(off), off == 0);
}

Verdict worse(Verdict acc, Verdict v) {
    return {acc.holds && v.holds, std::max(acc.residual, v.residual)};
}

}  // namespace

Verdict check_ci(const JointDist& p, const CiStatement& stmt) {
    stmt.check_within(p.variable_count());
    return detail::visit_masses(p, [&](const auto& masses) { return ci_kernel(p, masses, stmt); });
}

Verdict check_mutual_independence(const JointDist& p, const NodeSet& s) {
    if (s.size() < 2) throw Error(ErrorKind::SetTooSmall, "mutual independence needs at least two variables");
    Verdict out;
    for (NodeId v : s) out = worse(out, check_ci(p, CiStatement(NodeSet{v}, {}, s - NodeSet{v})));
    return out;
}

Verdict check_fd(const JointDist& p, const NodeSet& a, NodeId b) {
    if (a.contains(b)) throw Error(ErrorKind::IndexOverlap, "dependent variable is among the determinants");
    if (b >= p.variable_count()) throw Error(ErrorKind::InvalidStatement, "variable index out of range");
    return detail::visit_masses(p, [&](const auto& masses) { return fd_kernel(p, masses, a, b); });
}

Verdict satisfies_network(const JointDist& p, const Dag& g) {
    if (g.node_count() != p.variable_count()) {
        throw Error(ErrorKind::NodeCountMismatch, "network and distribution have different sizes");
    }
    Verdict out;
    for (const auto& stmt : local_ci_set(g)) out = worse(out, check_ci(p, stmt));
    return out;
}

}  // namespace bnci
