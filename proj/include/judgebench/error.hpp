#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace judgebench {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad argument to an operation (arity, range, malformed values).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Exhaustive space or state set larger than the configured cap.
class CapacityError : public Error {
 public:
  CapacityError(const std::string& what, std::size_t count)
      : Error(what), count_(count) {}
  std::size_t count() const noexcept { return count_; }

 private:
  std::size_t count_;
};

// Formula text outside the grammar. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : Error(msg + " at " + std::to_string(line) + ":" + std::to_string(column)),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Formula or model does not fit the target (unknown atom, agent, invariant).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Scenario or model document does not match its schema. `path` names the
// offending field, e.g. "formulas[2].expected".
class SchemaError : public Error {
 public:
  SchemaError(const std::string& path, const std::string& msg)
      : Error(path + ": " + msg), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace judgebench
