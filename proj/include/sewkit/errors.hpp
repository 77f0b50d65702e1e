#pragma once

#include <stdexcept>
#include <string>

namespace sewkit {

/// Base of every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside an operation's domain (negative constants, empty lists, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Two maps that do not share source/target spaces were compared or composed.
class DomainMismatch : public Error {
 public:
  using Error::Error;
};

class InsufficientProbes : public Error {
 public:
  using Error::Error;
};

class SubdivisionError : public Error {
 public:
  using Error::Error;
};

class InadmissibleRegularity : public Error {
 public:
  using Error::Error;
};

/// Wrong defect mode (sewing data handed to a knitting operation or vice versa).
class ModeError : public Error {
 public:
  using Error::Error;
};

class ConcatError : public Error {
 public:
  using Error::Error;
};

/// A homotopy's sampled grid steps exceed its declared Lipschitz norm.
class DeclaredLipschitzViolated : public Error {
 public:
  using Error::Error;
};

}  // namespace sewkit
