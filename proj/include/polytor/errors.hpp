#pragma once

#include <stdexcept>
#include <string>

namespace polytor {

// Exit-code contract: 0 success, 1 cover sides differ, 2 validation,
// 3 non-acyclic, 4 unsupported presentation shape.

struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Conductor N of the session field does not admit a requested root of unity.
struct ConductorError : ValidationError {
  explicit ConductorError(const std::string& msg) : ValidationError(msg) {}
};

struct NonAcyclicError : std::runtime_error {
  explicit NonAcyclicError(const std::string& msg, std::string character = {})
      : std::runtime_error(msg), offending_character(std::move(character)) {}
  std::string offending_character;  // empty when the failure is not tied to a twist
};

struct UnsupportedError : std::runtime_error {
  explicit UnsupportedError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace polytor
