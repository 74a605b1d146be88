#ifndef BNCI_DISTRIBUTION_HPP
#define BNCI_DISTRIBUTION_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "bnci/ci.hpp"

namespace bnci {

using Rational = mpq_class;
using Value = std::uint32_t;
using Outcome = std::vector<Value>;

enum class MassMode { Exact, Approximate };

inline constexpr double kDefaultTolerance = 1e-9;
/// Upper bound on the product of cardinalities of any distribution.
inline constexpr std::uint64_t kStateGuard = std::uint64_t{1} << 24;

/// Finite joint pmf over named discrete variables. Only outcomes with
/// positive mass are stored, sorted lexicographically (variable 0 most
/// significant). Masses are exact rationals, or doubles in approximate mode
/// where every predicate compares against `tolerance()`.
class JointDist {
public:
    /// Exact mode. Masses must be nonnegative and sum to exactly 1; repeated
    /// outcomes accumulate. Throws NotNormalized, GuardExceeded, InvalidStatement.
    JointDist(std::vector<std::string> labels, std::vector<Value> cards,
              std::vector<std::pair<Outcome, Rational>> entries);
    /// Approximate mode. Masses must sum to 1 within `tolerance`.
    JointDist(std::vector<std::string> labels, std::vector<Value> cards,
              std::vector<std::pair<Outcome, double>> entries, double tolerance = kDefaultTolerance);

    /// Product of independent uniform variables, exact.
    static JointDist uniform(std::vector<std::string> labels, std::vector<Value> cards);

    MassMode mode() const noexcept {
        return std::holds_alternative<std::vector<Rational>>(masses_) ? MassMode::Exact
                                                                      : MassMode::Approximate;
    }
    bool exact() const noexcept { return mode() == MassMode::Exact; }
    double tolerance() const noexcept { return tolerance_; }

    std::size_t variable_count() const noexcept { return cards_.size(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::vector<Value>& cards() const noexcept { return cards_; }
    NodeSet all_variables() const { return NodeSet::range(0, static_cast<NodeId>(cards_.size())); }

    std::size_t support_size() const noexcept { return codes_.size(); }
    Outcome outcome(std::size_t i) const;
    Value value(std::size_t i, NodeId var) const;
    double mass_as_double(std::size_t i) const;
    /// Exact mode only.
    const std::vector<Rational>& exact_masses() const;
    /// Approximate mode only.
    const std::vector<double>& approx_masses() const;

    /// Mass of a full outcome (zero when absent).
    double probability(std::span<const Value> outcome) const;
    Rational exact_probability(std::span<const Value> outcome) const;

    /// Internal mixed-radix encoding of the stored outcomes.
    const std::vector<std::uint64_t>& codes() const noexcept { return codes_; }
    const std::vector<std::uint64_t>& strides() const noexcept { return strides_; }

    JointDist to_approximate(double tolerance = kDefaultTolerance) const;

    /// Distribution of (f(X))  where f maps each outcome of this distribution
    /// to an outcome over the new variables. Mode is preserved.
    using OutcomeMap = std::function<void(std::span<const Value> in, std::span<Value> out)>;
    JointDist push_forward(std::vector<std::string> labels, std::vector<Value> cards,
                           const OutcomeMap& f) const;

    /// Independent product: variables of this distribution, then of `other`.
    JointDist product(const JointDist& other) const;

    /// Variables in `vars` keep their relative index order.
    JointDist marginal(const NodeSet& vars) const;

    friend bool operator==(const JointDist& a, const JointDist& b);

private:
    JointDist() = default;
    template <class Mass>
    static JointDist build(std::vector<std::string> labels, std::vector<Value> cards,
                           std::vector<std::pair<Outcome, Mass>> entries, double tolerance);
    template <class Mass>
    static JointDist from_codes(std::vector<std::string> labels, std::vector<Value> cards,
                                std::vector<std::pair<std::uint64_t, Mass>> entries, double tolerance);

    std::vector<std::string> labels_;
    std::vector<Value> cards_;
    std::vector<std::uint64_t> strides_;
    std::vector<std::uint64_t> codes_;
    std::variant<std::vector<Rational>, std::vector<double>> masses_;
    double tolerance_ = 0.0;
};

/// Marginal pmf of one variable as a dense vector indexed by value.
std::vector<Rational> exact_pmf(const JointDist& p, NodeId var);
std::vector<double> pmf(const JointDist& p, NodeId var);

/// Variable names and cardinalities for `vars: a:2 b:3`; `<values...> n/d` lines.
JointDist parse_dist(std::string_view text);
/// Exact masses print as n/d; approximate masses print as the exact binary
/// fraction of the stored double, so the text round-trips bit for bit.
std::string format_dist(const JointDist& p);

}  // namespace bnci

#endif  // BNCI_DISTRIBUTION_HPP
