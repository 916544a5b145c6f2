#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wavebound {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad configuration value or violated precondition. `field()` names the
/// offending parameter when there is one.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& what)
      : Error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// a(t) or a'(t) produced a non-finite value, or a(t) <= 0.
class ProfileError : public Error {
 public:
  ProfileError(const std::string& what, double t) : Error(what), t_(t) {}
  double time() const noexcept { return t_; }

 private:
  double t_;
};

/// A quadrature or oracle failed to reach its tolerance.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double estimate) : Error(what), estimate_(estimate) {}
  double achieved_estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

class DomainCoverageError : public Error {
 public:
  using Error::Error;
};

class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Non-finite field value during time stepping.
class BlowUpError : public Error {
 public:
  BlowUpError(const std::string& what, std::size_t step, double t)
      : Error(what), step_(step), t_(t) {}
  std::size_t step_index() const noexcept { return step_; }
  double time() const noexcept { return t_; }

 private:
  std::size_t step_;
  double t_;
};

class SeriesError : public Error {
 public:
  using Error::Error;
};

class FitError : public Error {
 public:
  using Error::Error;
};

/// The data violate the moment hypothesis (c0 != 0), so no L2 bound applies.
class HypothesisViolation : public Error {
 public:
  using Error::Error;
};

/// The closed-form oracle does not exist for the requested configuration.
class OracleUnavailable : public Error {
 public:
  using Error::Error;
};

class DegenerateOrderError : public Error {
 public:
  using Error::Error;
};

}  // namespace wavebound
