#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace chaoslab {

enum class ErrorKind {
    DiagonalTuple,
    ConflictingValue,
    BadArity,
    OutOfRange,
    BadIndex,
    DivergentSeries,
    DomainError,
    NonPositiveLength,
    DiagonalPair,
    ResourceLimit,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::DiagonalTuple: return "DiagonalTuple";
    case ErrorKind::ConflictingValue: return "ConflictingValue";
    case ErrorKind::BadArity: return "BadArity";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::BadIndex: return "BadIndex";
    case ErrorKind::DivergentSeries: return "DivergentSeries";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::NonPositiveLength: return "NonPositiveLength";
    case ErrorKind::DiagonalPair: return "DiagonalPair";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
    }
    return "Unknown";
}

/// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace chaoslab
