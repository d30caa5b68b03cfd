#pragma once

#include <stdexcept>
#include <string>

namespace qchan {

enum class ErrorKind {
    InvalidInput,
    Parse,
    DimensionMismatch,
    NotPositive,
    NotAChannel,
    CannotRenormalize,
    Inapplicable,
    CapExceeded,
    NumericalFailure,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Raised by make_channel; carries the Frobenius residual of sum_i A_i^* A_i - I.
class NotAChannelError : public Error {
public:
    NotAChannelError(double residual, const std::string& what)
        : Error(ErrorKind::NotAChannel, what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

} // namespace qchan
