#ifndef VOYTOP_ERRORS_HPP
#define VOYTOP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace voytop {

// Malformed input text (transcription lines, config files).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Structurally valid input that violates a domain constraint
// (unknown enum value, duplicate page, orphan document).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Caller passed an out-of-range or inconsistent argument.
class ArgumentError : public std::invalid_argument {
 public:
  explicit ArgumentError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Numerical failure: non-convergence, degenerate input.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace voytop

#endif  // VOYTOP_ERRORS_HPP
