#pragma once

#include <stdexcept>
#include <string>

namespace bcnf {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A determinant is zero, so the map is not invertible.
class DegenerateParameters : public Error {
 public:
  using Error::Error;
};

class ComplexEigenvalues : public Error {
 public:
  using Error::Error;
};

/// Parameters fall outside the region where a quantity is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

class VerticalImage : public Error {
 public:
  using Error::Error;
};

/// f(Omega) is not inside Omega.
class ContainmentViolation : public Error {
 public:
  using Error::Error;
};

/// Z does not exist because f^2(T) is not left of E^s(X).
class ZUndefined : public Error {
 public:
  using Error::Error;
};

class VertexBudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// An orbit or a manifold left the configured bounding radius.
class EscapeError : public Error {
 public:
  using Error::Error;
};

class SingularComposition : public Error {
 public:
  using Error::Error;
};

/// A solved cycle point lies in the wrong half-plane for its letter.
class ItineraryMismatch : public Error {
 public:
  using Error::Error;
};

/// Wraps an error raised inside a named pipeline stage.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& what)
      : Error("stage '" + stage + "': " + what), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace bcnf
