#ifndef BNCI_ERROR_HPP
#define BNCI_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace bnci {

enum class ErrorKind {
    SyntaxError,
    DuplicateLabel,
    UnknownLabel,
    CycleDetected,
    InvalidStatement,
    OverlappingSets,
    TooManyNodes,
    NodeCountMismatch,
    EmptySet,
    SetTooSmall,
    IndexOverlap,
    GuardExceeded,
    NotNormalized,
    InvalidInstance,
    AlreadyDuplicated,
    MissingDuplicate,
    AntecedentViolated,
    RangeTooLarge,
    InvalidBudget,
    Io,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the toolkit. The kind is stable and is what tests
/// and the CLI branch on; the message is for humans.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace bnci

#endif  // BNCI_ERROR_HPP
