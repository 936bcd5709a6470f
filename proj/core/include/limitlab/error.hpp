#pragma once

#include <stdexcept>
#include <string>

namespace limitlab {

// Precondition or numerical-contract violation raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// A computation could not produce a trustworthy number (singular kernel,
// divergent series, too little data for a fit).
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace limitlab
