#pragma once

#include <stdexcept>
#include <string>

namespace pqf {

/// Base class of every error raised by the toolkit.
class PqfError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed user input (bad angle string, unknown gate token, invalid flag combination).
class InvalidInput : public PqfError {
  public:
    using PqfError::PqfError;
};

/// A conjecture-backed search exhausted its candidate budget.
class AssumptionFailure : public PqfError {
  public:
    using PqfError::PqfError;
};

/// Working precision was insufficient to decide a comparison even after doubling.
class PrecisionExhausted : public PqfError {
  public:
    using PqfError::PqfError;
};

/// A protocol or circuit failed exact re-verification.
class VerificationFailure : public PqfError {
  public:
    using PqfError::PqfError;
};

/// A documented precondition of an operation does not hold.
class PreconditionViolated : public PqfError {
  public:
    using PqfError::PqfError;
};

/// Arithmetic invariant broken; always indicates a bug.
class InternalError : public PqfError {
  public:
    using PqfError::PqfError;
};

/// PSLQ hit its configured iteration cap.
class IterationCap : public PqfError {
  public:
    using PqfError::PqfError;
};

} // namespace pqf
