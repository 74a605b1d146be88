#ifndef BNCI_REDUCTION_HPP
#define BNCI_REDUCTION_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "bnci/ci.hpp"
#include "bnci/dag.hpp"

namespace bnci {

// Instances number their variables V_1..V_n from 1, as in the problem
// statements. Network nodes and distribution variables are 0-based.

/// V_b is a function of V_A.
struct FdEntry {
    std::vector<std::uint32_t> a;  // sorted, duplicate-free
    std::uint32_t b = 0;

    friend bool operator==(const FdEntry&, const FdEntry&) = default;
    friend auto operator<=>(const FdEntry&, const FdEntry&) = default;
};

/// Conclusion "V_b0 is a function of V_a0".
struct FdTarget {
    std::uint32_t a0 = 0;
    std::uint32_t b0 = 0;

    friend bool operator==(const FdTarget&, const FdTarget&) = default;
};

/// Uniform variables of equal cardinality, V_1..V_3 mutually independent,
/// every V_i a function of (V_1, V_2, V_3), plus FDs and pairwise
/// independencies. Fewer than three variables are allowed; the independence
/// and determination antecedents then range over V_1..V_n.
struct ImplicationAInstance {
    std::uint32_t n = 0;
    std::vector<FdEntry> fds;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairwise;
    std::optional<FdTarget> target;

    /// Throws InvalidInstance.
    void validate() const;
};

/// Two mutual-independence groups (which may share indices) plus FDs,
/// optionally with a duplicated target variable b0_prime.
struct ImplicationInstance {
    std::uint32_t n = 0;
    std::vector<std::uint32_t> c1;
    std::vector<std::uint32_t> c2;
    std::vector<FdEntry> fds;
    std::optional<FdTarget> target;
    std::optional<std::uint32_t> b0_prime;
    std::vector<std::string> labels;  // optional names for V_1..V_n

    /// Throws InvalidInstance.
    void validate() const;
    std::string label(std::uint32_t i) const;
};

/// Replaces each pairwise independence (c0, c1) by a fresh variable Y and the
/// FDs of (V_c0, V_c1, Y) = (V_1, V_2, V_3), dropping trivial entries. Needs
/// n >= 3. Throws InvalidInstance.
ImplicationAInstance eliminate_pairwise_independence(const ImplicationAInstance& inst);

/// Variable numbering of the Implication B instance built from an
/// Implication A instance on n variables (1-based, 9n + 2 variables).
struct ImplicationBLayout {
    std::uint32_t n = 0;

    std::uint32_t q() const { return 1; }
    std::uint32_t v(std::uint32_t i) const { return 1 + i; }           // i = 1..3n
    std::uint32_t w(std::uint32_t i) const { return 1 + 3 * n + i; }   // i = 1..3n+1
    std::uint32_t m(std::uint32_t i) const { return 6 * n + 2 + i; }   // i = 1..3n
    std::uint32_t size() const { return 9 * n + 2; }
    std::vector<std::string> labels() const;
};

/// Every FD of the Implication B antecedents, family by family, with each
/// mutual determination split per component. Includes entries whose
/// dependent already appears among the determinants, and repeats.
std::vector<FdEntry> implication_b_fd_expansion(const ImplicationAInstance& inst);

/// Implication B instance: C1 = {Q, V_1, V_2, V_3}, C2 = {M_1..M_3n, W_3n+1},
/// FDs from the expansion with trivial entries and repeats removed. Requires
/// no pairwise independencies. Throws InvalidInstance.
ImplicationInstance build_implication_b(const ImplicationAInstance& inst);

/// Adds V_{n+1} with ({b0}, n+1) and ({n+1}, b0). Throws AlreadyDuplicated,
/// and InvalidInstance when there is no target.
ImplicationInstance duplicate_target_variable(const ImplicationInstance& inst);

struct Role {
    enum class Kind { U, Y, X, Z };
    Kind kind = Kind::U;
    std::uint32_t i = 0;  // 1-based variable index
    std::uint32_t j = 0;  // 1-based FD index, X only

    std::string label() const;
    friend bool operator==(const Role&, const Role&) = default;
};

/// Node layout of the compiled networks: all U_i, then Y_i, then X_i^j
/// grouped by i then j, then Z_i.
struct RoleLayout {
    std::uint32_t n = 0;
    std::uint32_t k = 0;

    NodeId u(std::uint32_t i) const { return i - 1; }
    NodeId y(std::uint32_t i) const { return n + i - 1; }
    NodeId x(std::uint32_t i, std::uint32_t j) const { return 2 * n + (i - 1) * k + (j - 1); }
    NodeId z(std::uint32_t i) const { return 2 * n + n * k + i - 1; }
    std::size_t size() const { return static_cast<std::size_t>(n) * (k + 3); }
    std::vector<Role> roles() const;
};

struct ReductionOutput {
    Dag network1;
    Dag network2;
    CiStatement target_ci;  // (Y_b0, Y_a0, Y_b0')
    std::vector<Role> role_index;
};

/// Throws MissingDuplicate without b0_prime, InvalidInstance otherwise.
ReductionOutput compile_two_networks(const ImplicationInstance& inst);

/// Instance file text. Lines: `n`, `group1`, `group2`, `fd <A> -> <b>`,
/// `target <a0> -> <b0>`, `dup <b0'>`; `form implication-a` switches to the
/// Implication A form, which also accepts `pairwise <c0> <c1>`.
using AnyInstance = std::variant<ImplicationInstance, ImplicationAInstance>;
AnyInstance parse_instance(std::string_view text);
std::string format_instance(const ImplicationInstance& inst);
std::string format_instance(const ImplicationAInstance& inst);

}  // namespace bnci

#endif  // BNCI_REDUCTION_HPP
