#pragma once

#include <stdexcept>
#include <string>

namespace prc {

enum class ErrorKind {
  InvalidArgument,     // precondition violated by the caller
  RangeInverted,       // lo > hi
  DeadWindow,          // admissible window contained no accepted prime
  Exhaustion,          // backtracking emptied the first window
  Reducible,           // polynomial has a rational root
  Undecidable,         // precision cap reached before a verdict
  DepthInsufficient,   // chain too short for the requested analysis
};

/// Usage-class errors map to exit status 2, everything else to 1.
inline bool is_usage_error(ErrorKind kind) {
  return kind == ErrorKind::InvalidArgument || kind == ErrorKind::RangeInverted;
}

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace prc
