#pragma once

#include <stdexcept>
#include <string>

namespace posa {

// Base for every error raised by the library. The CLI maps subclasses onto
// exit codes: ParameterError -> 2, IoError/ParseError -> 3, the rest -> 4.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shapes that do not agree, odd sizes handed to the DWT, images smaller than a filter.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Out-of-range configuration: even kernels, looks < 1, damping <= 0.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Input outside a function's mathematical domain (zero norm, zero variance, negative pixels).
class DomainError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ParseError : public IoError {
 public:
  using IoError::IoError;
};

}  // namespace posa
