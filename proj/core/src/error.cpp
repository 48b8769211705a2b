#include "sttrace/error.hpp"

namespace sttrace {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NoSquareRoot: return "NoSquareRoot";
    case ErrorCode::InvalidModulus: return "InvalidModulus";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::TailNotCertifiable: return "TailNotCertifiable";
    case ErrorCode::WindowViolation: return "WindowViolation";
    case ErrorCode::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace sttrace
