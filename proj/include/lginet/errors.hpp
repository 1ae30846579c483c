#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lginet {

// Malformed input file or record. Carries the 1-based line number when known.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Well-formed record whose content is invalid (bad label, broken tree, ...).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller broke a precondition of an operation.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Tensor shapes do not line up.
class DimensionError : public ContractError {
 public:
  using ContractError::ContractError;
};

// Invalid or unknown configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// NaN/Inf showed up where finite values are required.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The finite-difference oracle could not be applied (non-deterministic objective).
class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lginet
