#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stodom {

enum class ErrorCode {
    DomainMismatch,
    NonIntegrable,
    MassNotOne,
    NegativeMass,
    EmptySupport,
    SupportCapExceeded,
    OrderOutOfRange,
    MomentHypothesisViolated,
    GenerationExhausted,
    UnknownSuite,
    ParseError,
    ValidationError,
    InvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto a stable JSON diagnostic.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace stodom
