#pragma once

#include <stdexcept>
#include <string>

namespace citegraph {

enum class ErrorKind {
  InvalidArgument,
  OutOfRange,
  Io,
  Parse,
  Conflict,
  Config,
  EmptyDistribution,
};

const char* to_string(ErrorKind kind) noexcept;

// Library-wide exception type. The kind maps one-to-one onto the C API
// status codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace citegraph
