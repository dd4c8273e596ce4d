#pragma once

#include <stdexcept>
#include <string>

namespace entropic {

enum class ErrorCode {
  BadDimension,
  DimensionMismatch,
  InvalidDistribution,
  NotHermitian,
  NotUnitary,
  NoConvergence,
  BadOrder,
  NotDualPair,
  BoundaryOrder,
  BoundaryDistribution,
  UnsupportedOrder,
  BadElement,
  NotSubgroup,
  ZeroEntry,
  UnknownName,
  TooLarge,
  EmptyInput,
  NoOverlap,
  Infeasible,
  SearchFailed,
  ParseError,
};

const char* to_string(ErrorCode code) noexcept;

/// True for failures of a numerical procedure (as opposed to bad input).
bool is_numerical_failure(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace entropic
