#pragma once

#include <stdexcept>
#include <string>

namespace sdtw {

/// Failure categories surfaced by the solvers. The CLI maps them to exit codes.
enum class ErrorKind {
  domain,                  ///< argument outside the admissible range
  integration_blowup,      ///< non-finite state during integration
  under_resolved,          ///< grid or floating-point resolution too coarse for the request
  internal_contradiction,  ///< a property guaranteed by the theory failed numerically
  no_wave_found,           ///< c-scan produced no root
  invalid_wave,            ///< requested wave does not exist (e.g. c = 0 with unequal angles)
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::integration_blowup: return "integration-blowup";
    case ErrorKind::under_resolved: return "under-resolved";
    case ErrorKind::internal_contradiction: return "internal-contradiction";
    case ErrorKind::no_wave_found: return "no-wave-found";
    case ErrorKind::invalid_wave: return "invalid-wave";
  }
  return "unknown";
}

class SolverError : public std::runtime_error {
 public:
  SolverError(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw SolverError(kind, what);
}

inline void require(bool condition, const std::string& what) {
  if (!condition) fail(ErrorKind::domain, what);
}

}  // namespace sdtw
