#pragma once

#include <stdexcept>
#include <string>

namespace deformae {

// Error categories. The CLI maps each one onto a process exit code.
enum class ErrorKind {
  Parse = 1,
  Validation = 2,
  Obstruction = 3,
  Hypothesis = 4,
  OrderMismatch,
  NotInvertible,
  ModelMismatch,
  Bidegree,
  Unsupported,
  Integrability,
  Degenerate,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  // 0 is never returned; math errors that are not obstructions or hypothesis
  // failures surface as validation-type problems with the inputs.
  int exit_code() const noexcept {
    switch (kind_) {
      case ErrorKind::Parse:
        return 1;
      case ErrorKind::Obstruction:
        return 3;
      case ErrorKind::Hypothesis:
      case ErrorKind::Integrability:
        return 4;
      default:
        return 2;
    }
  }

 private:
  ErrorKind kind_;
};

}  // namespace deformae
