#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace boidsense {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidAngle : public Error {
 public:
  using Error::Error;
};

class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

/// A configuration value broke one of its validation rules.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& rule)
      : Error("invalid config field '" + field + "': " + rule), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Malformed document; line numbers are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace boidsense
