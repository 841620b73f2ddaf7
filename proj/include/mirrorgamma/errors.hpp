#pragma once

#include <stdexcept>
#include <string>

namespace mirrorgamma {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller violated an operation's precondition (mismatched series shapes,
/// index out of range, wrong cohomological degree, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed textual or JSON input.
class ParseError : public Error {
 public:
  ParseError(const std::string& field, const std::string& message)
      : Error(field.empty() ? message : field + ": " + message), field_(field) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// A computed quantity contradicts a structural identity that must hold
/// (e.g. a non-vanishing first Chern class for an anticanonical hypersurface).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// The wall relations of the fan do not contain a unimodular simplicial basis.
class MoriBasisError : public Error {
 public:
  using Error::Error;
};

/// A multiplicative sequence with some s_i = 0 cannot be inverted.
class NonInvertibleSequence : public Error {
 public:
  using Error::Error;
};

/// Truncation order too low to certify a statement about a series.
class InsufficientOrder : public Error {
 public:
  using Error::Error;
};

/// Numeric evaluation was requested for something outside the supported range.
class UnsupportedEvaluation : public Error {
 public:
  using Error::Error;
};

}  // namespace mirrorgamma
