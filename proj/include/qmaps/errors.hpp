#pragma once

#include <stdexcept>
#include <string>

namespace qmaps {

/// A precondition on the inputs of an operation was violated.
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// The operation exists but is not defined for this kind of input
/// (e.g. Wigner-space diffusion with a non-collinear channel).
class UnsupportedOperation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// A numerical invariant (trace, Hermiticity, entropy range) failed.
class InvariantError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent experiment configuration. `field()` names the
/// offending key.
class ConfigError : public std::runtime_error {
public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

private:
  std::string field_;
};

} // namespace qmaps
