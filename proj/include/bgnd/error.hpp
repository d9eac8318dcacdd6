#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bgnd {

// Base of every error raised by the library. The C API maps each subclass to
// a distinct status code.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Structural problem in an input document; `path` is a JSON pointer into it.
class ParseError : public Error {
public:
  ParseError(std::string path, const std::string& what)
      : Error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

private:
  std::string path_;
};

// One or more semantic invariant violations, all reported at once.
class ValidationError : public Error {
public:
  explicit ValidationError(std::vector<std::string> violations)
      : Error(join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
  static std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& item : items) {
      if (!out.empty()) out += "; ";
      out += item;
    }
    return out;
  }

  std::vector<std::string> violations_;
};

// A request admits no feasible action (e.g. target unreachable).
class UnsatisfiableError : public Error {
public:
  using Error::Error;
};

// An oracle or routine was asked to handle an input shape it does not cover.
class UnsupportedError : public Error {
public:
  using Error::Error;
};

// Exhaustive enumeration would exceed a configured cap.
class TooLargeError : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

// A mathematical invariant that must hold did not; signals a bug.
class InvariantViolation : public Error {
public:
  using Error::Error;
};

}  // namespace bgnd
