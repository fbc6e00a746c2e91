#pragma once

#include <stdexcept>
#include <string>

namespace stablat {

enum class ErrorKind {
  Input,             // malformed or dimension-mismatched input
  Precondition,      // an operation's precondition does not hold
  HoleClass,         // Z(v) = 0 where a phase was requested
  OnWall,            // a point lies on a recorded wall
  OrthogonalPlanes,  // mutual pairing matrix of two planes is singular
  Inconsistent,      // no stability extends the given data
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_error(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace stablat
