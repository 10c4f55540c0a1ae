#pragma once

#include <stdexcept>
#include <string>

namespace amqc {

enum class ErrorKind {
  InvalidArgument,
  InvalidConvention,
  OpenLoop,
  DimensionTooSmall,
  LoopUnclosable,
  SingularComposition,
  ResourceLimit,
};

const char* to_string(ErrorKind kind) noexcept;

// Every recoverable failure in the library is raised as an amqc::Error so
// callers can branch on the kind without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::InvalidConvention: return "invalid-convention";
    case ErrorKind::OpenLoop: return "open-loop";
    case ErrorKind::DimensionTooSmall: return "dimension-too-small";
    case ErrorKind::LoopUnclosable: return "loop-unclosable";
    case ErrorKind::SingularComposition: return "singular-composition";
    case ErrorKind::ResourceLimit: return "resource-limit";
  }
  return "unknown";
}

}  // namespace amqc
