#pragma once

#include <stdexcept>
#include <string>

namespace cts {

/// Invalid state or argument inside the inference and policy layer.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rejected experiment or CLI configuration (CLI exit code 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Unreadable or malformed input file (CLI exit code 3).
class DataError : public Error {
 public:
  using Error::Error;
};

}  // namespace cts
