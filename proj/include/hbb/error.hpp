#ifndef HBB_ERROR_HPP
#define HBB_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace hbb {

enum class ErrorKind {
    InvalidInput,
    ParseError,
    DivisionByZero,
    FieldMismatch,
    SupportError,
    EmptySupport,
    NotCertified,
    IrrationalSpectrum,
    DefectiveEigenvalue,
    RetriesExhausted,
    VerificationFailed,
    SingularSystem,
    InconsistentSystem,
    DecodingFailure,
    NotAPower,
    UnsupportedField,
    BenchFailure,
};

inline std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::SupportError: return "SupportError";
    case ErrorKind::EmptySupport: return "EmptySupport";
    case ErrorKind::NotCertified: return "NotCertified";
    case ErrorKind::IrrationalSpectrum: return "IrrationalSpectrum";
    case ErrorKind::DefectiveEigenvalue: return "DefectiveEigenvalue";
    case ErrorKind::RetriesExhausted: return "RetriesExhausted";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::InconsistentSystem: return "InconsistentSystem";
    case ErrorKind::DecodingFailure: return "DecodingFailure";
    case ErrorKind::NotAPower: return "NotAPower";
    case ErrorKind::UnsupportedField: return "UnsupportedField";
    case ErrorKind::BenchFailure: return "BenchFailure";
    }
    return "Unknown";
}

/// Every failure raised by the library. The kind is machine-readable; the
/// message is for humans.
class Error : public std::runtime_error
{
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace hbb

#endif
