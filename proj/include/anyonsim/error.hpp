#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace anyonsim {

enum class ErrorCode {
  InvalidPath,
  CoincidenceAtStep,
  TurnTooLargeAtStep,
  InvalidLattice,
  EndpointOffLattice,
  ZeroVector,
  AntiparallelAmbiguity,
  EndpointsNotClosedOrExchanged,
  RoundingInconsistency,
  NotComparable,
  BudgetExceeded,
  IncompleteMap,
  NonSquare,
  InvalidArgument,
  NotExchangeKernel,
  NoDominantClass,
  DegenerateGrid,
  BadRange,
  ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Library error. `code()` is stable and used as the CLI diagnostic prefix;
/// `step()` is set for path errors that can be pinned to a step index.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> step = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> step() const noexcept { return step_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> step_;
};

}  // namespace anyonsim
