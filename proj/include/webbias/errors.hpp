#pragma once

#include <stdexcept>
#include <string>

namespace webbias {

/// Fatal problem with an input file or configuration (CLI exit code 1).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// The inputs are well-formed but too small/degenerate for the requested
/// analysis (CLI exit code 2).
class InsufficientDataError : public std::runtime_error {
 public:
  explicit InsufficientDataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace webbias
