#pragma once

#include <stdexcept>
#include <string>

namespace voa {

enum class ErrorCode {
    DivisionByZero,
    BadInput,
    NotSymmetric,
    OddDiagonal,
    Degenerate,
    DimensionMismatch,
    SectorMismatch,
    ParityMismatch,
    Inhomogeneous,
    NoPartner,
    UnknownDescriptor,
    UnknownSuite,
    Unsupported,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

} // namespace voa
