#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace namegame {

// Base for every recoverable failure thrown by this library. Programming
// errors (violated preconditions that callers must not be able to trigger
// with valid data) use assert instead.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or inconsistent caller-supplied data: duplicate names, negative
// frequencies, empty inputs, mismatched universes.
class invalid_input : public error {
 public:
  explicit invalid_input(const std::string& what) : error(what) {}
};

// A numeric parameter outside its mathematical domain (rank 0, floor >= 1,
// sigma <= 0, mu outside [0,1]).
class invalid_domain : public error {
 public:
  explicit invalid_domain(const std::string& what) : error(what) {}
};

// Frequencies that cannot be coerced to a distribution: sum outside the
// accepted [0.999, 1.001] band.
class normalization_error : public invalid_input {
 public:
  explicit normalization_error(const std::string& what) : invalid_input(what) {}
};

// Lookup of a name absent from a table.
class not_found : public error {
 public:
  explicit not_found(const std::string& what) : error(what) {}
};

// An operation that needs more data than it was given (fit on < 2 points,
// stats over an empty record set).
class insufficient_data : public error {
 public:
  explicit insufficient_data(const std::string& what) : error(what) {}
};

// Structural failure while reading an external file. line() is 1-based;
// 0 means the failure is not tied to a specific line.
class parse_error : public error {
 public:
  parse_error(std::size_t line, const std::string& what)
      : error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Filesystem problem: unreadable path, failed write.
class io_error : public error {
 public:
  explicit io_error(const std::string& what) : error(what) {}
};

}  // namespace namegame
