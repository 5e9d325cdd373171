#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace linesimp {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// --- geometry ---

class InvalidPolyline : public Error {
 public:
  using Error::Error;
};

class DegenerateVertex : public Error {
 public:
  using Error::Error;
};

class CollinearOverlap : public Error {
 public:
  using Error::Error;
};

// Bad parameter value outside the documented domain (ratios, limits, flags).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

// --- koch ---

class IterationTooLarge : public Error {
 public:
  using Error::Error;
};

class LevelOutOfRange : public Error {
 public:
  using Error::Error;
};

// --- scaling ---

class EmptyInput : public Error {
 public:
  using Error::Error;
};

class NegativeValue : public Error {
 public:
  using Error::Error;
};

class RulerNotPositive : public Error {
 public:
  using Error::Error;
};

class RulerTooLarge : public Error {
 public:
  using Error::Error;
};

class InsufficientSamples : public Error {
 public:
  using Error::Error;
};

// --- simplify ---

class TooFewVertices : public Error {
 public:
  using Error::Error;
};

class RatioUndefined : public Error {
 public:
  using Error::Error;
};

class NonPositiveTolerance : public Error {
 public:
  using Error::Error;
};

class NonPositiveThreshold : public Error {
 public:
  using Error::Error;
};

class TargetOutOfRange : public Error {
 public:
  using Error::Error;
};

// --- io ---

class FileNotFound : public Error {
 public:
  using Error::Error;
};

// Malformed input; carries a 1-based line and column where known (0 = unknown).
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line = 0, std::size_t column = 0)
      : Error(format(msg, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& msg, std::size_t line, std::size_t column);

  std::size_t line_ = 0;
  std::size_t column_ = 0;
};

class UnsupportedGeometry : public Error {
 public:
  using Error::Error;
};

class WriteFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace linesimp
