#pragma once
#include <stdexcept>
#include <string>

namespace rvmon {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonMonotoneTimestamp : Error { using Error::Error; };
struct KindMismatch : Error { using Error::Error; };
struct DivisionByZero : Error { using Error::Error; };

struct SyntaxError : Error {
  int line, col;
  SyntaxError(int line, int col, const std::string& msg)
      : Error("syntax error at " + std::to_string(line) + ":" +
              std::to_string(col) + ": " + msg),
        line(line), col(col) {}
};
struct DuplicateName : Error { using Error::Error; };
struct UnknownIdentifier : Error { using Error::Error; };
struct TypeError : Error { using Error::Error; };

struct UnboundChannel : Error { using Error::Error; };
struct UnknownChannel : Error { using Error::Error; };
struct ScheduleOutOfRange : Error { using Error::Error; };
struct InvalidClampValue : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

}  // namespace rvmon
