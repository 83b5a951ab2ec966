#pragma once

#include <stdexcept>
#include <string>

namespace hypflow {

enum class ErrorKind {
  domain,
  stencil,
  immersion,
  singular_integral,
  precondition,
  parameter,
  solver,
  closure,
  geometry,
  step,
  config,
  io,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

inline void require(bool condition, ErrorKind kind, const char* what) {
  if (!condition) fail(kind, what);
}

}  // namespace hypflow
