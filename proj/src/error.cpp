#include "streamcolor/error.hpp"

namespace streamcolor {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedLine: return "MalformedLine";
    case ErrorCode::ModeMismatch: return "ModeMismatch";
    case ErrorCode::DegreeExceeded: return "DegreeExceeded";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::PeriodTooSmall: return "PeriodTooSmall";
    case ErrorCode::ComponentOutOfRange: return "ComponentOutOfRange";
    case ErrorCode::TooManySlots: return "TooManySlots";
    case ErrorCode::InstanceTooLarge: return "InstanceTooLarge";
    case ErrorCode::BatchSizeMismatch: return "BatchSizeMismatch";
    case ErrorCode::TooManyBatches: return "TooManyBatches";
    case ErrorCode::FlushBudgetExceeded: return "FlushBudgetExceeded";
    case ErrorCode::UnknownSide: return "UnknownSide";
    case ErrorCode::NotBipartite: return "NotBipartite";
    case ErrorCode::InfeasibleSpec: return "InfeasibleSpec";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::BoundViolation: return "BoundViolation";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(what) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace streamcolor
