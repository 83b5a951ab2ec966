#include "hypflow/error.hpp"

namespace hypflow {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::domain: return "domain error";
    case ErrorKind::stencil: return "stencil error";
    case ErrorKind::immersion: return "immersion error";
    case ErrorKind::singular_integral: return "singular integral";
    case ErrorKind::precondition: return "precondition violated";
    case ErrorKind::parameter: return "parameter error";
    case ErrorKind::solver: return "solver error";
    case ErrorKind::closure: return "closure error";
    case ErrorKind::geometry: return "geometry error";
    case ErrorKind::step: return "step error";
    case ErrorKind::config: return "config error";
    case ErrorKind::io: return "io error";
  }
  return "error";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace hypflow
