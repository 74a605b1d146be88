#include "bnci/error.hpp"

namespace bnci {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::SyntaxError: return "SyntaxError";
        case ErrorKind::DuplicateLabel: return "DuplicateLabel";
        case ErrorKind::UnknownLabel: return "UnknownLabel";
        case ErrorKind::CycleDetected: return "CycleDetected";
        case ErrorKind::InvalidStatement: return "InvalidStatement";
        case ErrorKind::OverlappingSets: return "OverlappingSets";
        case ErrorKind::TooManyNodes: return "TooManyNodes";
        case ErrorKind::NodeCountMismatch: return "NodeCountMismatch";
        case ErrorKind::EmptySet: return "EmptySet";
        case ErrorKind::SetTooSmall: return "SetTooSmall";
        case ErrorKind::IndexOverlap: return "IndexOverlap";
        case ErrorKind::GuardExceeded: return "GuardExceeded";
        case ErrorKind::NotNormalized: return "NotNormalized";
        case ErrorKind::InvalidInstance: return "InvalidInstance";
        case ErrorKind::AlreadyDuplicated: return "AlreadyDuplicated";
        case ErrorKind::MissingDuplicate: return "MissingDuplicate";
        case ErrorKind::AntecedentViolated: return "AntecedentViolated";
        case ErrorKind::RangeTooLarge: return "RangeTooLarge";
        case ErrorKind::InvalidBudget: return "InvalidBudget";
        case ErrorKind::Io: return "Io";
    }
    return "Error";
}

}  // namespace bnci
