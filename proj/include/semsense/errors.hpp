#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace semsense {

// Input that breaks a documented invariant (bad reading, bad config, bad XML).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public ValidationError {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : ValidationError("line " + std::to_string(line) + ", column " + std::to_string(column) +
                        ": " + what),
        line_(line),
        column_(column) {}

  [[nodiscard]] std::size_t line() const noexcept { return line_; }
  [[nodiscard]] std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Annotation or reference that points at nothing (RDFa property without a
// subject in scope, hasField naming an undefined rdf:ID).
class DanglingError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Prefixed name whose prefix is missing from the namespace table.
class PrefixError : public ValidationError {
 public:
  explicit PrefixError(std::string prefix)
      : ValidationError("unresolvable prefix '" + prefix + "'"), prefix_(std::move(prefix)) {}

  [[nodiscard]] const std::string& prefix() const noexcept { return prefix_; }

 private:
  std::string prefix_;
};

// A value-bearing subject lacks its unit, definition or name.
class IncompleteError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class TopologyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace semsense
