#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace agility {

/// Base class for all toolkit errors.
struct AgilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Bad user-supplied configuration (flags, scenario parameters, addresses).
struct ConfigError : AgilityError {
  using AgilityError::AgilityError;
};

/// Malformed or inconsistent input data.
struct DataError : AgilityError {
  using AgilityError::AgilityError;
};

/// Parse failure with the 1-based line number of the first bad line.
struct ParseError : DataError {
  ParseError(std::size_t line_number, const std::string& what)
      : DataError("line " + std::to_string(line_number) + ": " + what),
        line(line_number) {}
  std::size_t line;
};

}  // namespace agility
