#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spaceform {

// Grid node where a failure was detected.
struct GridLocation {
  std::size_t i = 0;
  std::size_t j = 0;
  double u = 0.0;
  double v = 0.0;
};

std::string describe(const GridLocation& loc);

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Errors that point at a grid node.
class LocatedError : public Error {
 public:
  LocatedError(const std::string& what, GridLocation loc)
      : Error(what + " at " + describe(loc)), loc_(loc) {}
  const GridLocation& location() const noexcept { return loc_; }

 private:
  GridLocation loc_;
};

class DimensionMismatch : public Error {
  using Error::Error;
};
class InvalidGrid : public Error {
  using Error::Error;
};
class IndexOutOfRange : public Error {
  using Error::Error;
};
class NonFiniteValue : public LocatedError {
  using LocatedError::LocatedError;
};
class FrameNormalizationError : public Error {
  using Error::Error;
};
class WrongCase : public Error {
  using Error::Error;
};
class NonLorentz : public Error {
  using Error::Error;
};
class AsymmetricConnection : public Error {
  using Error::Error;
};

class DegenerateDelta : public LocatedError {
  using LocatedError::LocatedError;
};

class HypothesisViolated : public LocatedError {
 public:
  HypothesisViolated(std::string hypothesis, double residual, GridLocation loc)
      : LocatedError("hypothesis '" + hypothesis + "' violated (residual " +
                         std::to_string(residual) + ")",
                     loc),
        hypothesis_(std::move(hypothesis)),
        residual_(residual) {}
  const std::string& hypothesis() const noexcept { return hypothesis_; }
  double residual() const noexcept { return residual_; }

 private:
  std::string hypothesis_;
  double residual_;
};

class SignMismatch : public LocatedError {
  using LocatedError::LocatedError;
};
class IncompatiblePair : public LocatedError {
  using LocatedError::LocatedError;
};
class LiouvilleViolated : public LocatedError {
  using LocatedError::LocatedError;
};
class DomainViolation : public LocatedError {
  using LocatedError::LocatedError;
};
class InvalidInitialFrame : public Error {
  using Error::Error;
};
class NonFiniteState : public LocatedError {
  using LocatedError::LocatedError;
};
class DegenerateFrame : public LocatedError {
  using LocatedError::LocatedError;
};
class TotallyGeodesicRegion : public LocatedError {
  using LocatedError::LocatedError;
};
class InvalidProjection : public Error {
  using Error::Error;
};
class ParseError : public Error {
  using Error::Error;
};

}  // namespace spaceform
