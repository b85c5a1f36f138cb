#pragma once

#include <functional>

namespace curvcheck {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
};

struct QuadOptions {
  double abs_tol = 1e-9;
  double rel_tol = 1e-12;
  unsigned max_depth = 18;
};

/// Adaptive Gauss–Kronrod (61 points) on [a, b]; b may be +inf. Throws
/// QuadratureNonConvergent when the error estimate misses both tolerances.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadOptions& options = {});

/// Heuristic test that ∫_a^∞ |f| is finite: the dyadic segments ∫_T^{2T} |f|
/// at T = 2^10, 2^20, ..., 2^60 must shrink and end below `tol`.
bool tail_converges(const std::function<double(double)>& f, double tol = 1e-8);

}  // namespace curvcheck
