#include "bnci/statistic.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "bnci/error.hpp"
#include "dist_util.hpp"

namespace bnci {

namespace {

using CondRow = std::vector<std::pair<std::uint64_t, double>>;

bool rows_close(const CondRow& a, const CondRow& b, double tol) {
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            if (a[i++].second > tol) return false;
        } else if (i == a.size() || b[j].first < a[i].first) {
            if (b[j++].second > tol) return false;
        } else {
            if (std::abs(a[i++].second - b[j++].second) > tol) return false;
        }
    }
    return true;
}

}  // namespace

std::optional<std::size_t> StatisticPartition::block_of(std::span<const Value> base_outcome) const {
    const Outcome key(base_outcome.begin(), base_outcome.end());
    const auto it = std::lower_bound(outcomes.begin(), outcomes.end(), key);
    if (it == outcomes.end() || *it != key) return std::nullopt;
    return blocks[static_cast<std::size_t>(it - outcomes.begin())];
}

StatisticPartition minimal_sufficient_statistic(const JointDist& p, const NodeSet& x, const NodeSet& u) {
    if (x.empty() || u.empty()) throw Error(ErrorKind::EmptySet, "statistic needs nonempty X and U");
    if (x.intersects(u)) throw Error(ErrorKind::IndexOverlap, "X and U overlap");
    const auto cx = detail::project_codes(p, x);
    const auto cu = detail::project_codes(p, u);

    // Support entries sorted by (x, u); each x-run is one conditional row.
    std::vector<std::size_t> order(p.support_size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return std::pair(cx[i], cu[i]) < std::pair(cx[j], cu[j]); });

    StatisticPartition out;
    out.base = x;
    std::map<std::vector<std::pair<std::uint64_t, Rational>>, std::size_t> exact_blocks;
    std::vector<CondRow> approx_reps;

    for (std::size_t r = 0; r < order.size();) {
        std::size_t e = r;
        while (e < order.size() && cx[order[e]] == cx[order[r]]) ++e;
        Outcome xo;
        for (NodeId v : x) xo.push_back(p.value(order[r], v));
        std::size_t block = 0;
        if (p.exact()) {
            const auto& m = p.exact_masses();
            std::vector<std::pair<std::uint64_t, Rational>> row;
            Rational total = 0;
            for (std::size_t k = r; k < e; ++k) {
                const auto i = order[k];
                if (!row.empty() && row.back().first == cu[i]) {
                    row.back().second += m[i];
                } else {
                    row.emplace_back(cu[i], m[i]);
                }
                total += m[i];
            }
            for (auto& entry : row) entry.second /= total;
            const auto [it, fresh] = exact_blocks.emplace(std::move(row), exact_blocks.size());
            block = it->second;
        } else {
            CondRow row;
            double total = 0.0;
            for (std::size_t k = r; k < e; ++k) {
                const auto i = order[k];
                const double m = p.mass_as_double(i);
                if (!row.empty() && row.back().first == cu[i]) {
                    row.back().second += m;
                } else {
                    row.emplace_back(cu[i], m);
                }
                total += m;
            }
            for (auto& entry : row) entry.second /= total;
            block = approx_reps.size();
            for (std::size_t b = 0; b < approx_reps.size(); ++b) {
                if (rows_close(approx_reps[b], row, p.tolerance())) {
                    block = b;
                    break;
                }
            }
            if (block == approx_reps.size()) approx_reps.push_back(std::move(row));
        }
        out.outcomes.push_back(std::move(xo));
        out.blocks.push_back(block);
        r = e;
    }
    out.block_count = p.exact() ? exact_blocks.size() : approx_reps.size();
    return out;
}

JointDist augment_with_statistic(const JointDist& p, const StatisticPartition& t, std::string label) {
    if (!t.base.empty() && t.base.max() >= p.variable_count()) {
        throw Error(ErrorKind::InvalidStatement, "statistic base is not over this distribution");
    }
    auto labels = p.labels();
    labels.push_back(std::move(label));
    auto cards = p.cards();
    cards.push_back(static_cast<Value>(std::max<std::size_t>(t.block_count, 1)));
    const auto n = p.variable_count();
    Outcome xo(t.base.size());
    return p.push_forward(std::move(labels), std::move(cards),
                          [&](std::span<const Value> in, std::span<Value> out) {
                              std::copy(in.begin(), in.end(), out.begin());
                              for (std::size_t k = 0; k < t.base.size(); ++k) xo[k] = in[t.base[k]];
                              const auto b = t.block_of(xo);
                              if (!b) throw Error(ErrorKind::InvalidStatement, "outcome outside the statistic's domain");
                              out[n] = static_cast<Value>(*b);
                          });
}

bool same_partition(const StatisticPartition& a, const StatisticPartition& b) {
    if (a.outcomes != b.outcomes || a.blocks.size() != b.blocks.size()) return false;
    std::map<std::size_t, std::size_t> forward, backward;
    for (std::size_t i = 0; i < a.blocks.size(); ++i) {
        const auto [f, new_f] = forward.emplace(a.blocks[i], b.blocks[i]);
        const auto [r, new_r] = backward.emplace(b.blocks[i], a.blocks[i]);
        if (f->second != b.blocks[i] || r->second != a.blocks[i]) return false;
    }
    return true;
}

}  // namespace bnci
