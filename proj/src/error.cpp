#include "curvcheck/error.hpp"

namespace curvcheck {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::NonIrreducible: return "NonIrreducible";
    case ErrorKind::NegativeRate: return "NegativeRate";
    case ErrorKind::DetailedBalanceViolated: return "DetailedBalanceViolated";
    case ErrorKind::ZeroRateInsideRange: return "ZeroRateInsideRange";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::MalformedMaps: return "MalformedMaps";
    case ErrorKind::NonPositiveInput: return "NonPositiveInput";
    case ErrorKind::NonDensity: return "NonDensity";
    case ErrorKind::VanishingEntry: return "VanishingEntry";
    case ErrorKind::DegenerateNeighborhood: return "DegenerateNeighborhood";
    case ErrorKind::UnboundedM1: return "UnboundedM1";
    case ErrorKind::TruncationInsufficient: return "TruncationInsufficient";
    case ErrorKind::QuadratureNonConvergent: return "QuadratureNonConvergent";
    case ErrorKind::DivergentIntegral: return "DivergentIntegral";
    case ErrorKind::NonIntegrableTail: return "NonIntegrableTail";
    case ErrorKind::NonIntegrableGrowth: return "NonIntegrableGrowth";
    case ErrorKind::SolverNotConverged: return "SolverNotConverged";
  }
  return "Unknown";
}

bool is_input_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::QuadratureNonConvergent:
    case ErrorKind::DivergentIntegral:
    case ErrorKind::SolverNotConverged:
      return false;
    default:
      return true;
  }
}

}  // namespace curvcheck
