#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "curvcheck/chain.hpp"

namespace curvcheck {

struct ResistanceOptions {
  double kkt_tolerance = 1e-6;
  double gap_tolerance = 1e-9;  // stop once the barrier duality gap m/t is below this
  int max_newton_steps = 200;   // per barrier stage
};

/// ϱ(x, y) = max f(y) - f(x) subject to Γ(f)(z) ≤ 1 for every z.
struct ResistanceResult {
  double value = 0.0;         // objective at a feasible point, hence a lower bound
  double upper_bound = 0.0;   // value plus the duality gap
  double kkt_residual = 0.0;
  bool converged = false;
  int newton_steps = 0;
  StateFunction f;            // maximizer with f(x) = 0
};

/// Log-barrier interior-point method with Newton steps. A result with
/// converged = false still carries a feasible lower bound.
ResistanceResult resistance_distance(const MarkovChain& chain, std::size_t x, std::size_t y,
                                     const ResistanceOptions& options = {});

struct ResistanceDiameter {
  double value = 0.0;
  std::size_t from = 0;
  std::size_t to = 0;
  Eigen::MatrixXd distances;  // symmetric, zero diagonal
  bool all_converged = true;
  double max_kkt_residual = 0.0;
  /// min over pairs of sqrt(M_{1,sup}/2) ϱ(x,y) - dist(x,y); nonnegative by the comparison bound.
  double comparison_slack = 0.0;
};

/// All pairs, split over `threads` workers (0 = hardware concurrency).
ResistanceDiameter resistance_diameter(const MarkovChain& chain, unsigned threads = 0,
                                       const ResistanceOptions& options = {});

}  // namespace curvcheck
