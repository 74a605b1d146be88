#ifndef BNCI_STATISTIC_HPP
#define BNCI_STATISTIC_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bnci/ci.hpp"
#include "bnci/distribution.hpp"

namespace bnci {

/// A statistic of the base variables, up to relabeling: positive-probability
/// base outcomes grouped into blocks. Blocks are numbered in order of first
/// appearance when outcomes are listed lexicographically.
struct StatisticPartition {
    NodeSet base;
    std::vector<Outcome> outcomes;    // sorted, one per positive-probability base outcome
    std::vector<std::size_t> blocks;  // blocks[i] is the block of outcomes[i]
    std::size_t block_count = 0;

    std::optional<std::size_t> block_of(std::span<const Value> base_outcome) const;
};

/// Minimal sufficient statistic of X for U: outcomes x are grouped by the
/// conditional pmf p(U | X = x). Throws IndexOverlap or EmptySet.
StatisticPartition minimal_sufficient_statistic(const JointDist& p, const NodeSet& x, const NodeSet& u);

/// p extended by one variable T (cardinality block_count) equal to the
/// statistic evaluated at the base variables.
JointDist augment_with_statistic(const JointDist& p, const StatisticPartition& t, std::string label);

/// Same equivalence relation on the same outcome list.
bool same_partition(const StatisticPartition& a, const StatisticPartition& b);

}  // namespace bnci

#endif  // BNCI_STATISTIC_HPP
