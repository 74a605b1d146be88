#ifndef BNCI_INDEPENDENCE_HPP
#define BNCI_INDEPENDENCE_HPP

#include "bnci/ci.hpp"
#include "bnci/dag.hpp"
#include "bnci/distribution.hpp"

namespace bnci {

/// Outcome of a distribution predicate. `residual` is zero exactly when an
/// exact-mode predicate holds; in approximate mode `holds` means residual is
/// within the distribution's tolerance.
struct Verdict {
    bool holds = true;
    double residual = 0.0;

    explicit operator bool() const noexcept { return holds; }
};

/// Checks p(a,b,c) p(c) = p(a,c) p(b,c) for every outcome; the residual is the
/// largest absolute deviation. Throws InvalidStatement when the statement
/// mentions a variable p does not have.
Verdict check_ci(const JointDist& p, const CiStatement& stmt);

/// Each variable of `s` independent of the rest of `s`. Throws SetTooSmall
/// when |s| < 2.
Verdict check_mutual_independence(const JointDist& p, const NodeSet& s);

/// X_b is a function of X_A. Residual is the mass off the most likely b for
/// each outcome of A, summed. Throws IndexOverlap when b is in A.
Verdict check_fd(const JointDist& p, const NodeSet& a, NodeId b);

/// All local CIs of g hold in p. Throws NodeCountMismatch.
Verdict satisfies_network(const JointDist& p, const Dag& g);

}  // namespace bnci

#endif  // BNCI_INDEPENDENCE_HPP
