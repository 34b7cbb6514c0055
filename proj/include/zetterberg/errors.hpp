#pragma once

#include <stdexcept>
#include <string>

namespace zetterberg {

/// Bad parameters or malformed input (CLI exit code 3).
class input_error : public std::invalid_argument {
 public:
  explicit input_error(const std::string& what) : std::invalid_argument(what) {}
};

/// A computation was refused because it would exceed a configured budget
/// (CLI exit code 2). `required` carries the estimated bytes when known.
class resource_error : public std::runtime_error {
 public:
  explicit resource_error(const std::string& what, uint64_t required = 0)
      : std::runtime_error(what), required_bytes(required) {}
  uint64_t required_bytes;
};

/// An internal consistency check failed (signals a bug, CLI exit code 1).
class check_error : public std::logic_error {
 public:
  explicit check_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace zetterberg
