#pragma once

#include <stdexcept>
#include <string>

namespace sgcl {

enum class ErrorKind {
  Syntax,
  UnknownAgent,
  SubscriptRange,
  NotRational,
  Overflow,
  UnknownState,
  FailureState,
  BadProfile,
  Schema,
  InvalidGame,
  Io,
  Limit,
  Argument,
};

const char* to_string(ErrorKind kind) noexcept;

// Single exception type for the library; `kind` drives the C API status code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace sgcl
