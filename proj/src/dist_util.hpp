#ifndef BNCI_SRC_DIST_UTIL_HPP
#define BNCI_SRC_DIST_UTIL_HPP

#include <cstdint>
#include <vector>

#include "bnci/distribution.hpp"
#include "bnci/error.hpp"

namespace bnci::detail {

/// Mixed-radix code of each stored outcome restricted to `vars`, in the
/// same lexicographic order as a marginal over `vars` would use.
inline std::vector<std::uint64_t> project_codes(const JointDist& p, const NodeSet& vars) {
    if (!vars.empty() && vars.max() >= p.variable_count()) {
        throw Error(ErrorKind::InvalidStatement, "variable index out of range");
    }
    std::vector<std::uint64_t> out(p.support_size(), 0);
    const auto& cards = p.cards();
    const auto& strides = p.strides();
    const auto& codes = p.codes();
    for (std::size_t i = 0; i < codes.size(); ++i) {
        std::uint64_t sub = 0;
        for (NodeId v : vars) sub = sub * cards[v] + (codes[i] / strides[v]) % cards[v];
        out[i] = sub;
    }
    return out;
}

/// Calls f(std::vector<Rational>) or f(std::vector<double>) with p's masses.
template <class F>
decltype(auto) visit_masses(const JointDist& p, F&& f) {
    if (p.exact()) return f(p.exact_masses());
    return f(p.approx_masses());
}

}  // namespace bnci::detail

#endif  // BNCI_SRC_DIST_UTIL_HPP
