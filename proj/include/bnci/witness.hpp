#ifndef BNCI_WITNESS_HPP
#define BNCI_WITNESS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bnci/distribution.hpp"
#include "bnci/reduction.hpp"

namespace bnci {

/// Antecedents of `inst` that fail in p (over V_1..V_n, in order), as text.
/// Empty means all hold. p must be exact.
std::vector<std::string> violated_antecedents(const ImplicationInstance& inst, const JointDist& p);

/// Same for the Implication A antecedents, using the instance's own
/// cardinality convention: every V_i uniform with one common cardinality.
std::vector<std::string> violated_antecedents(const ImplicationAInstance& inst, const JointDist& p);

/// Distribution over the compiled network variables with every role copy of
/// index i equal to V_i. Throws AntecedentViolated when pV breaks an
/// antecedent, MissingDuplicate, NodeCountMismatch.
JointDist trivial_witness(const ImplicationInstance& inst, const JointDist& pv);

/// Distribution over the Implication B variables built from pV by the modular
/// construction; verified against every Implication B antecedent before it is
/// returned. Throws AntecedentViolated, GuardExceeded, InvalidInstance.
JointDist implication_b_witness(const JointDist& pv, const ImplicationAInstance& inst);

/// X_1..X_k given as functions on the points 0..ell^n-1 of a uniform V.
/// If they are mutually independent and uniform with cardinality ell,
/// returns Y_1..Y_{n-k} (values in 0..ell-1) with (X, Y) a bijective
/// function of V; otherwise nullopt. Throws RangeTooLarge when some X_i takes
/// more than ell values, InvalidInstance for k > n or wrong lengths.
std::optional<std::vector<std::vector<Value>>> iid_extend_witness(std::uint32_t ell, std::uint32_t n,
                                                                  const std::vector<std::vector<Value>>& xs);

}  // namespace bnci

#endif  // BNCI_WITNESS_HPP
