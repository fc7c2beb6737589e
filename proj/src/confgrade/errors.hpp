#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace confgrade {

enum class ErrorKind {
  InvalidArgument,
  MissingInput,
  InvalidConfig,
  Consistency,
  Git,
  MalformedConflict,
  UnsupportedLanguage,
  CorpusFormat,
  Io,
  Template,
  Transport,
  ConflictTooLarge,
  ScoreUnavailable,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised for unbalanced or nested conflict markers. `line` is 0-based.
class MalformedConflict : public Error {
 public:
  MalformedConflict(std::size_t line, const std::string& what)
      : Error(ErrorKind::MalformedConflict,
              "malformed conflict at line " + std::to_string(line + 1) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Raised while reading line-delimited corpus files. `line` is 1-based.
class CorpusFormatError : public Error {
 public:
  CorpusFormatError(std::size_t line, const std::string& what)
      : Error(ErrorKind::CorpusFormat, "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace confgrade
