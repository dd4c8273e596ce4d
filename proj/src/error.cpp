#include "entropic/error.hpp"

namespace entropic {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::BadDimension: return "BadDimension";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidDistribution: return "InvalidDistribution";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::BadOrder: return "BadOrder";
    case ErrorCode::NotDualPair: return "NotDualPair";
    case ErrorCode::BoundaryOrder: return "BoundaryOrder";
    case ErrorCode::BoundaryDistribution: return "BoundaryDistribution";
    case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorCode::BadElement: return "BadElement";
    case ErrorCode::NotSubgroup: return "NotSubgroup";
    case ErrorCode::ZeroEntry: return "ZeroEntry";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NoOverlap: return "NoOverlap";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::SearchFailed: return "SearchFailed";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

bool is_numerical_failure(ErrorCode code) noexcept {
  return code == ErrorCode::NoConvergence || code == ErrorCode::SearchFailed ||
         code == ErrorCode::Infeasible;
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace entropic
