#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace drinfeld {

/// Base for all errors raised by library operations. `name()` is the stable
/// machine-readable identifier (e.g. "NotPrime", "BadReduction") that the CLI
/// reports verbatim; `what()` carries the human-readable detail.
class Error : public std::runtime_error {
  public:
    Error(std::string name, const std::string& detail)
        : std::runtime_error(name + ": " + detail), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

  private:
    std::string name_;
};

/// Violated precondition or impossible request; maps to CLI exit code 1.
class DomainError : public Error {
  public:
    using Error::Error;
};

/// Broken internal invariant (MultipleSolutions, InternalInconsistency);
/// maps to CLI exit code 3. Never the caller's fault.
class InternalError : public Error {
  public:
    using Error::Error;
};

/// Malformed input text or flags; maps to CLI exit code 2.
class UsageError : public Error {
  public:
    using Error::Error;
};

[[noreturn]] inline void raise_domain(const std::string& name, const std::string& detail) {
    throw DomainError(name, detail);
}

[[noreturn]] inline void raise_internal(const std::string& name, const std::string& detail) {
    throw InternalError(name, detail);
}

}  // namespace drinfeld
