#pragma once

#include <stdexcept>
#include <string>

namespace gdnls {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// (omega, c) violates omega > c^2/4 or (omega = c^2/4 and c > 0).
class NotAdmissible : public Error {
 public:
  NotAdmissible(double omega, double c);
  double omega() const { return omega_; }
  double c() const { return c_; }

 private:
  double omega_;
  double c_;
};

/// (alpha, beta) violates the sign conditions attached to (omega, c).
class BadExponents : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class SigmaUnsupported : public Error {
 public:
  explicit SigmaUnsupported(double sigma);
};

class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

class NoBracket : public Error {
 public:
  using Error::Error;
};

class ZeroField : public Error {
 public:
  ZeroField() : Error("field is identically zero") {}
};

class NotProjectable : public Error {
 public:
  using Error::Error;
};

class NotConverged : public Error {
 public:
  using Error::Error;
};

class IncompatibleModulation : public Error {
 public:
  IncompatibleModulation(double c, double length);
};

class Inapplicable : public Error {
 public:
  using Error::Error;
};

}  // namespace gdnls
