#pragma once

#include <stdexcept>
#include <string>

namespace mbprk {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A theorem hypothesis does not hold, so the test cannot be applied.
class NonApplicable : public Error {
 public:
  using Error::Error;
};

/// An operation requiring strictly positive coefficients received a
/// nonpositive one.
class PositivityViolated : public Error {
 public:
  using Error::Error;
};

/// Two ragged coefficient arrays do not have matching dimensions.
class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

/// The requested feature is outside the supported range.
class Unsupported : public Error {
 public:
  using Error::Error;
};

/// A sub-diagonal coefficient needed as a divisor is zero.
class SubdiagonalZero : public Error {
 public:
  using Error::Error;
};

/// A stage derivative multiplier d_i is not positive.
class NegativeD : public Error {
 public:
  using Error::Error;
};

/// A derivative term cannot be eliminated by stage substitution.
class NotEliminable : public Error {
 public:
  using Error::Error;
};

class NotSymmetric : public Error {
 public:
  using Error::Error;
};

/// An energy step bound was requested for a scheme whose discriminant
/// eigenvalue is not positive.
class NonPositiveLambda : public Error {
 public:
  using Error::Error;
};

/// Inconsistent or invalid run settings.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed input data (files, specifiers, traces).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A runtime monitor detected a bound breach at a specific step.
class BoundViolation : public Error {
 public:
  BoundViolation(const std::string& what, long step, double value)
      : Error(what), step(step), value(value) {}
  long step;
  double value;
};

}  // namespace mbprk
