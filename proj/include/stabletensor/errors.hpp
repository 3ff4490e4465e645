#pragma once

#include <stdexcept>
#include <string>

namespace stabletensor {

/// Error taxonomy. Every throwing operation in the library uses one of the
/// four categories below; the CLI maps them 1:1 onto process exit codes.
enum class ErrorKind {
  InvalidInput,         // exit 2: malformed partition, bad rank, bad flag value
  OutOfStableRange,     // exit 3: rank below the admissible bound for the op
  InternalConsistency,  // exit 4: a cross-check the math guarantees has failed
  ResourceLimit,        // exit 5: configured size/overflow bound exceeded
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  int exit_code() const noexcept {
    switch (kind_) {
      case ErrorKind::InvalidInput: return 2;
      case ErrorKind::OutOfStableRange: return 3;
      case ErrorKind::InternalConsistency: return 4;
      case ErrorKind::ResourceLimit: return 5;
    }
    return 4;
  }

private:
  ErrorKind kind_;
};

struct InputError : Error {
  explicit InputError(const std::string& msg) : Error(ErrorKind::InvalidInput, msg) {}
};

/// Raised when an operation is asked to run at a rank below its admissible
/// bound; carries the smallest rank at which the call would be legal.
struct StableRangeError : Error {
  StableRangeError(const std::string& msg, int min_rank_)
      : Error(ErrorKind::OutOfStableRange, msg), min_rank(min_rank_) {}
  int min_rank;
};

struct InternalError : Error {
  explicit InternalError(const std::string& msg) : Error(ErrorKind::InternalConsistency, msg) {}
};

struct ResourceError : Error {
  explicit ResourceError(const std::string& msg) : Error(ErrorKind::ResourceLimit, msg) {}
};

}  // namespace stabletensor
