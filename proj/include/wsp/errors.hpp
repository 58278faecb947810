#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace wsp {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite samples or a field whose value count disagrees with its grid.
class InvalidFieldError : public Error {
 public:
  using Error::Error;
};

/// A scalar parameter outside its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Operands that do not share a grid, a time stamp or a layout.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// Evaluation of a kernel at its singular point.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// Grid too coarse to resolve the cutoff transition.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// Shifted evaluations leaving the box.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// The source term handed to the decomposition is not (close to) a gradient.
class NotAGradientError : public Error {
 public:
  using Error::Error;
};

/// Malformed or truncated field container.
class IoError : public Error {
 public:
  IoError(const std::string& what, std::uint64_t offset)
      : Error(what + " (byte offset " + std::to_string(offset) + ")"), offset_(offset) {}

  std::uint64_t offset() const noexcept { return offset_; }

 private:
  std::uint64_t offset_;
};

}  // namespace wsp
