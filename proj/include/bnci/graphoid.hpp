#ifndef BNCI_GRAPHOID_HPP
#define BNCI_GRAPHOID_HPP

#include <cstddef>

#include "bnci/ci.hpp"
#include "bnci/dsep.hpp"

namespace bnci {

/// Least superset of s over n variables closed under symmetry, decomposition,
/// weak union and contraction. Throws TooManyNodes when n exceeds `cap`, and
/// InvalidStatement for statements mentioning indices >= n.
CiSet semigraphoid_closure(const CiSet& s, std::size_t n, std::size_t cap = kEnumerationCap);

/// target is derivable from s with the semigraphoid axioms.
bool closure_implies(const CiSet& s, const CiStatement& target, std::size_t n,
                     std::size_t cap = kEnumerationCap);

}  // namespace bnci

#endif  // BNCI_GRAPHOID_HPP
