#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace curvcheck {

enum class ErrorKind {
  // chain construction and input validation
  InvalidInput,
  NonIrreducible,
  NegativeRate,
  DetailedBalanceViolated,
  ZeroRateInsideRange,
  BadParams,
  MalformedMaps,
  // evaluation preconditions
  NonPositiveInput,
  NonDensity,
  VanishingEntry,
  DegenerateNeighborhood,
  UnboundedM1,
  TruncationInsufficient,
  // numerical failures
  QuadratureNonConvergent,
  DivergentIntegral,
  NonIntegrableTail,
  NonIntegrableGrowth,
  SolverNotConverged,
};

std::string_view to_string(ErrorKind kind);

/// True for errors caused by malformed or out-of-domain input, as opposed to
/// a numerical routine failing on valid input.
bool is_input_error(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace curvcheck
