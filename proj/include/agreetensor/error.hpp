#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace agreetensor {

enum class ErrorCode {
  IndexOutOfRange,
  InvalidAxis,
  InvalidTensor,
  InvalidParams,
  ZeroMass,
  DegenerateChance,
  DimensionMismatch,
  Unsupported,
  DegreeTooLarge,
  HypothesisViolated,
  BudgetExceeded,
  NotDefined,
  BoundaryPoint,
  SupportMismatch,
  NotConverged,
  ZeroMarginUnsupported,
  Parse,
  Io,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised by kappa computations when 1 - sum_i P_{i+} P_{+i} == 0. `pair` names the
// offending rater pair ("12", "13", "23") or is empty for a bare two-way table.
class DegenerateChanceError : public Error {
 public:
  explicit DegenerateChanceError(std::string pair)
      : Error(ErrorCode::DegenerateChance,
              pair.empty() ? std::string("chance agreement equals 1")
                           : "chance agreement equals 1 for rater pair " + pair),
        pair_(std::move(pair)) {}

  const std::string& pair() const noexcept { return pair_; }

 private:
  std::string pair_;
};

}  // namespace agreetensor
