#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rover {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A mathematical precondition was violated (p | N, non-permutation,
// singular matrix, alphabet mismatch, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A configurable resource bound (state closure cap, enumeration limit)
// was exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// Malformed text input. Line numbers are 1-indexed; 0 means "whole file".
class ParseError : public Error {
 public:
  ParseError(std::string file, std::size_t line, const std::string& message)
      : Error(file + ":" + std::to_string(line) + ": " + message),
        file_(std::move(file)),
        line_(line),
        message_(message) {}

  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string file_;
  std::size_t line_;
  std::string message_;
};

// A domain error raised while parsing: the text was well formed but the
// value it describes is not (e.g. `p 2` with `N 6`).
class ParseDomainError : public DomainError {
 public:
  ParseDomainError(std::string file, std::size_t line, const std::string& message)
      : DomainError(file + ":" + std::to_string(line) + ": " + message),
        file_(std::move(file)),
        line_(line) {}

  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

}  // namespace rover
