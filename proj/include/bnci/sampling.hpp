#ifndef BNCI_SAMPLING_HPP
#define BNCI_SAMPLING_HPP

#include <cstdint>
#include <vector>

#include "bnci/dag.hpp"
#include "bnci/distribution.hpp"

namespace bnci {

/// Random distribution that factorizes along g: every conditional table row
/// is drawn from the flat Dirichlet distribution. Approximate mode, fully
/// determined by `seed` (the generator and the uniform-to-double conversion
/// are pinned, so results agree across platforms). Throws GuardExceeded and
/// NodeCountMismatch.
JointDist sample_factorized(const Dag& g, const std::vector<Value>& cards, std::uint64_t seed);

/// Exact-mode variant: each conditional row is proportional to integer
/// weights drawn uniformly from [1, max_weight], so every outcome is positive.
JointDist sample_factorized_exact(const Dag& g, const std::vector<Value>& cards, std::uint64_t seed,
                                  std::uint32_t max_weight = 8);

}  // namespace bnci

#endif  // BNCI_SAMPLING_HPP
