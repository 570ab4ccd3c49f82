#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace streamcolor {

enum class ErrorCode {
  MalformedLine,
  ModeMismatch,
  DegreeExceeded,
  DuplicateEdge,
  SelfLoop,
  IoFailure,
  PeriodTooSmall,
  ComponentOutOfRange,
  TooManySlots,
  InstanceTooLarge,
  BatchSizeMismatch,
  TooManyBatches,
  FlushBudgetExceeded,
  UnknownSide,
  NotBipartite,
  InfeasibleSpec,
  ParseError,
  // A with-high-probability bound of the algorithm did not hold on this run
  // (for instance a sub-instance offline degree above its declared bound).
  BoundViolation,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }
  /// The message without the code prefix that what() carries.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace streamcolor
