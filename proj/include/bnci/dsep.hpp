#ifndef BNCI_DSEP_HPP
#define BNCI_DSEP_HPP

#include <cstddef>

#include "bnci/ci.hpp"
#include "bnci/dag.hpp"

namespace bnci {

/// Largest node count accepted by the enumerating operations below.
inline constexpr std::size_t kEnumerationCap = 10;

/// Nodes d-connected to some node of `a` given `c` (never includes a or c).
/// Reachability ("Bayes ball") formulation, O(|V| + |E|).
NodeSet d_connected(const Dag& g, const NodeSet& a, const NodeSet& c);

/// True iff A and B are d-separated given C in g. Throws OverlappingSets when
/// the sets are not pairwise disjoint and InvalidStatement when A or B is empty
/// or an index is out of range.
bool d_separated(const Dag& g, const NodeSet& a, const NodeSet& b, const NodeSet& c);
bool d_separated(const Dag& g, const CiStatement& stmt);

/// Same criterion through the moral graph of the ancestral set of A u B u C.
/// Slower; kept as an independent second route.
bool d_separated_moral(const Dag& g, const NodeSet& a, const NodeSet& b, const NodeSet& c);

/// I(G): every disjoint triple with nonempty sides that is d-separated.
/// Throws TooManyNodes above `cap`.
CiSet implied_ci_set(const Dag& g, std::size_t cap = kEnumerationCap);

/// k = 1 inclusion problem: does g1 imply every CI that g0 implies?
bool inclusion_implies(const Dag& g1, const Dag& g0, std::size_t cap = kEnumerationCap);

}  // namespace bnci

#endif  // BNCI_DSEP_HPP
