#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nicd {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad fraction, empty set, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A data file could not be parsed. `line()` is 1-based, 0 when unknown.
class IngestionError : public Error {
 public:
  IngestionError(std::string path, std::size_t line, const std::string& what)
      : Error(path + ":" + std::to_string(line) + ": " + what),
        path_(std::move(path)),
        line_(line) {}

  const std::string& path() const noexcept { return path_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string path_;
  std::size_t line_;
};

/// A configuration file or command-line setting is invalid.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace nicd
