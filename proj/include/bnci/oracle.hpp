#ifndef BNCI_ORACLE_HPP
#define BNCI_ORACLE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bnci/ci.hpp"
#include "bnci/dag.hpp"
#include "bnci/distribution.hpp"

namespace bnci {

/// X_b is a function of X_A (0-based variable indices).
struct FunctionalDependency {
    NodeSet a;
    NodeId b = 0;
};

struct OracleBudget {
    std::size_t restarts = 64;
    std::size_t iterations = 2000;
    std::uint64_t seed = 0;
    std::vector<Value> cardinalities;  // empty means binary everywhere
    double eps_sat = 1e-9;
    double delta_vio = 1e-3;
    double lambda = 1.0;

    /// Throws InvalidBudget unless eps_sat < delta_vio, counts are positive
    /// and cardinalities (if given) match n.
    void validate(std::size_t n) const;
};

struct ConstraintResidual {
    std::string description;  // e.g. "given a _||_ b | c"
    double residual = 0.0;
    bool satisfied = false;
};

struct Counterexample {
    JointDist dist;
    std::vector<ConstraintResidual> report;  // antecedents first, target last
    std::size_t restart = 0;
};

/// Searches for p over n variables with every antecedent CI and FD holding
/// (residual < eps_sat) and the target CI violated (residual > delta_vio).
/// No result means inconclusive, not implied. Throws InvalidStatement for
/// out-of-range statements and InvalidBudget.
std::optional<Counterexample> refute_implication(std::size_t n, const CiSet& antecedent_cis,
                                                 const std::vector<FunctionalDependency>& antecedent_fds,
                                                 const CiStatement& target, const OracleBudget& budget,
                                                 std::vector<std::string> labels = {});

/// Searches for p satisfying both networks while violating the target. The
/// search space factorizes along g1. Throws NodeCountMismatch.
std::optional<Counterexample> refute_network_implication(const Dag& g1, const Dag& g2,
                                                         const CiStatement& target,
                                                         const OracleBudget& budget);

std::string format_report(const std::vector<ConstraintResidual>& report);

}  // namespace bnci

#endif  // BNCI_ORACLE_HPP
