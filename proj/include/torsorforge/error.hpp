#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace torsorforge {

enum class ErrorKind {
  invalid_argument,
  capacity,
  invariant,
  parse,
  unknown_directive,
  dangling_reference,
  oracle_mismatch,
};

inline const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::capacity: return "capacity";
    case ErrorKind::invariant: return "invariant";
    case ErrorKind::parse: return "parse";
    case ErrorKind::unknown_directive: return "unknown-directive";
    case ErrorKind::dangling_reference: return "dangling-reference";
    case ErrorKind::oracle_mismatch: return "oracle-mismatch";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised when a search or materialization would exceed its configured bound.
/// Never a silent truncation: `required()` carries the size that was asked for.
class CapacityError : public Error {
 public:
  CapacityError(const std::string& message, std::uint64_t required,
                std::uint64_t budget)
      : Error(ErrorKind::capacity, message),
        required_(required),
        budget_(budget) {}

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

class InvariantError : public Error {
 public:
  explicit InvariantError(const std::string& message)
      : Error(ErrorKind::invariant, message) {}
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw Error(ErrorKind::invalid_argument, message);
}

inline void require_invariant(bool condition, const std::string& message) {
  if (!condition) throw InvariantError(message);
}

}  // namespace torsorforge
