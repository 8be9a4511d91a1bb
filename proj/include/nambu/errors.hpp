#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nambu {

// Base class for everything this library throws on purpose.
struct error : std::runtime_error {
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Expression or model text that does not parse. `pos` is a byte offset into
// the offending string; `line` is 1-based and only meaningful for model files.
struct parse_error : error {
  std::size_t pos = 0;
  int line = 0;
  parse_error(const std::string& msg, std::size_t at, int ln = 0)
      : error(msg + " (at offset " + std::to_string(at) +
              (ln > 0 ? ", line " + std::to_string(ln) : "") + ")"),
        pos(at), line(ln) {}
};

// Violated precondition: grade/variance mismatch, foreign algebroid,
// division by zero, singular coframe, and the like.
struct domain_error : error {
  explicit domain_error(const std::string& msg) : error(msg) {}
};

// Arithmetic refused to continue (term-count budget exceeded).
struct expression_too_large : error {
  explicit expression_too_large(const std::string& msg) : error(msg) {}
};

// The numeric sampling fallback could not reach a verdict.
struct sampling_failed : error {
  explicit sampling_failed(const std::string& msg) : error(msg) {}
};

// An internal consistency cross-check failed. This is a bug trap, not a
// user-facing condition; it must never be swallowed.
struct internal_error : error {
  explicit internal_error(const std::string& msg)
      : error("internal consistency check failed: " + msg) {}
};

}  // namespace nambu
