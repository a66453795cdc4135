#pragma once

#include <stdexcept>
#include <string>

namespace hypolink {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input data (corpus files, graphs, configs).
/// The CLI maps this to exit code 2.
class DataError : public Error {
 public:
  using Error::Error;
};

/// Invalid parameter combinations supplied by a caller or the command line.
/// The CLI maps this to exit code 1.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace hypolink
