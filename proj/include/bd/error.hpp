#pragma once

#include <stdexcept>
#include <string>

namespace bd {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad file, bad instance, infeasible districting.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Arguments outside an algorithm's supported range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Exhaustive enumeration refused because the input is over the size cap.
class CapExceeded : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

}  // namespace bd
