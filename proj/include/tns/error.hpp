#pragma once

#include <stdexcept>
#include <string>

namespace tns {

/// Base for all library errors. category() is a stable machine-readable tag
/// used by the CLI when reporting failures.
class Error : public std::runtime_error {
 public:
  Error(std::string category, const std::string& what)
      : std::runtime_error(what), category_(std::move(category)) {}

  const std::string& category() const noexcept { return category_; }

 private:
  std::string category_;
};

class ParseError : public Error {
 public:
  ParseError(std::string category, std::size_t line, std::string content,
             const std::string& why)
      : Error(std::move(category),
              "line " + std::to_string(line) + ": " + why + ": '" + content + "'"),
        line_(line),
        content_(std::move(content)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& content() const noexcept { return content_; }

 private:
  std::size_t line_;
  std::string content_;
};

struct MalformedLine : ParseError {
  MalformedLine(std::size_t line, std::string content)
      : ParseError("MalformedLine", line, std::move(content), "malformed line") {}
};

struct NonMonotoneTime : ParseError {
  NonMonotoneTime(std::size_t line, std::string content)
      : ParseError("NonMonotoneTime", line, std::move(content),
                   "timestamp decreased") {}
};

struct SelfLoop : ParseError {
  SelfLoop(std::size_t line, std::string content)
      : ParseError("SelfLoop", line, std::move(content), "self-loop interaction") {}
};

struct InvalidSpec : Error {
  explicit InvalidSpec(const std::string& what) : Error("InvalidSpec", what) {}
};

struct NotResident : Error {
  explicit NotResident(const std::string& what) : Error("NotResident", what) {}
};

struct InputTooLarge : Error {
  explicit InputTooLarge(const std::string& what) : Error("InputTooLarge", what) {}
};

struct EmptyInput : Error {
  explicit EmptyInput(const std::string& what) : Error("EmptyInput", what) {}
};

struct ZeroExactNorm : Error {
  explicit ZeroExactNorm(const std::string& what) : Error("ZeroExactNorm", what) {}
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& what) : Error("ConfigError", what) {}
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error("IoError", what) {}
};

}  // namespace tns
