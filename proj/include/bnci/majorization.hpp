#ifndef BNCI_MAJORIZATION_HPP
#define BNCI_MAJORIZATION_HPP

#include <string_view>
#include <vector>

#include "bnci/distribution.hpp"

namespace bnci {

enum class MajorizationOrder { AOverB, BOverA, Both, Neither };

std::string_view to_string(MajorizationOrder order);

/// Compares prefix sums of the descending rearrangements, padding the shorter
/// vector with zeros. Both means the rearrangements coincide. Throws
/// NotNormalized for negative entries or sums other than 1.
MajorizationOrder majorizes(const std::vector<Rational>& pa, const std::vector<Rational>& pb);
/// Approximate version; comparisons and the normalization check use `tol`.
MajorizationOrder majorizes(const std::vector<double>& pa, const std::vector<double>& pb,
                            double tol = kDefaultTolerance);

}  // namespace bnci

#endif  // BNCI_MAJORIZATION_HPP
