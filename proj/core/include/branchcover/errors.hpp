#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace branchcover {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotReal : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

/// Raised when an exact coefficient leaves the 64-bit range.
class ArithmeticOverflow : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  explicit CapExceeded(std::size_t cap)
      : Error("closure exceeded cap of " + std::to_string(cap) + " elements"), cap_(cap) {}
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

class NotMember : public Error {
 public:
  using Error::Error;
};

class WrongAmbient : public Error {
 public:
  using Error::Error;
};

class SpecViolation : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class NotAKnot : public Error {
 public:
  using Error::Error;
};

class NotIndexTwo : public Error {
 public:
  using Error::Error;
};

class OracleMismatch : public Error {
 public:
  OracleMismatch(const std::string& what, double discrepancy)
      : Error(what), discrepancy_(discrepancy) {}
  double discrepancy() const noexcept { return discrepancy_; }

 private:
  double discrepancy_;
};

/// Two independent computations disagreed, or a structural invariant broke.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

class UnclassifiedFiniteGroup : public Error {
 public:
  using Error::Error;
};

}  // namespace branchcover
