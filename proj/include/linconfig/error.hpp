#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace linconfig {

enum class ErrorKind {
    RankDeficient,
    NotCoprime,
    DeterminantalNotOne,
    DeterminantalObstruction,
    NotUnimodular,
    NotADivisor,
    PlainInput,
    NotIdentityForm,
    NotSimple,
    NotCircular,
    TooFewColumns,
    ZeroRow,
    WrongShape,
    ShapeMismatch,
    Degenerate,
    UnverifiedRepresentation,
    BudgetExceeded,
    NotASubsetOfEdges,
    PreconditionViolated,
    InternalInconsistency,
    InvalidArgument,
    ParseError,
};

constexpr std::string_view to_string(ErrorKind k) noexcept {
    switch (k) {
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::NotCoprime: return "NotCoprime";
    case ErrorKind::DeterminantalNotOne: return "DeterminantalNotOne";
    case ErrorKind::DeterminantalObstruction: return "DeterminantalObstruction";
    case ErrorKind::NotUnimodular: return "NotUnimodular";
    case ErrorKind::NotADivisor: return "NotADivisor";
    case ErrorKind::PlainInput: return "PlainInput";
    case ErrorKind::NotIdentityForm: return "NotIdentityForm";
    case ErrorKind::NotSimple: return "NotSimple";
    case ErrorKind::NotCircular: return "NotCircular";
    case ErrorKind::TooFewColumns: return "TooFewColumns";
    case ErrorKind::ZeroRow: return "ZeroRow";
    case ErrorKind::WrongShape: return "WrongShape";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::UnverifiedRepresentation: return "UnverifiedRepresentation";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NotASubsetOfEdges: return "NotASubsetOfEdges";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can branch on it.
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string &what) { throw Error(kind, what); }

} // namespace linconfig
