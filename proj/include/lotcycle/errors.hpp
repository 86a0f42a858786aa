#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lotcycle {

enum class ErrorKind {
  InvalidInstance,
  InfeasibleInstance,
  MismatchedVariant,
  IndexOutOfRange,
  InvalidSchedule,
  DegenerateSwitchingCosts,
  UnsupportedCase,
  InvalidPeriodIndex,
  UnsupportedShape,
  NoIdleTime,
  SearchSpaceTooLarge,
  TooManyNodes,
  NotMetric,
  InvalidTour,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

// Every domain failure surfaces as an Error carrying its kind, so callers
// (the CLI in particular) can map kinds to exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace lotcycle
