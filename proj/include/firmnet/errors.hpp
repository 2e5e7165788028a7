#pragma once

#include <stdexcept>
#include <string>

namespace firmnet {

// Input data violated a format or content contract (exit code 3 at the CLI).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input file; carries the 1-based line number.
class ParseError : public DataError {
 public:
  ParseError(const std::string& path, size_t line, const std::string& what)
      : DataError(path + ":" + std::to_string(line) + ": " + what), line_(line) {}
  size_t line() const { return line_; }

 private:
  size_t line_;
};

// Estimator precondition failure; carries how many samples were available.
class InsufficientData : public DataError {
 public:
  InsufficientData(const std::string& what, long available)
      : DataError(what + " (available samples: " + std::to_string(available) + ")"),
        available_(available) {}
  long available() const { return available_; }

 private:
  long available_;
};

}  // namespace firmnet
