#pragma once

#include <limits>
#include <string>
#include <variant>
#include <vector>

namespace curvcheck {

/// F(r) = r^{1+δ} / n. n = +inf encodes F ≡ 0.
struct PowerType {
  double n = std::numeric_limits<double>::infinity();
  double delta = 1.0;
};

/// F(r) = out_scale · ν_{c,d}(-r / arg_scale).
struct NuBased {
  double out_scale = 1.0;
  double c = 0.0;
  double d = 0.0;
  double arg_scale = 1.0;
};

/// Piecewise linear through (grid[i], values[i]) with grid[0] = 0. Beyond the
/// last node F continues as the power law through the last two nodes.
struct Tabulated {
  std::vector<double> grid;
  std::vector<double> values;
};

using CDFunction = std::variant<PowerType, NuBased, Tabulated>;

/// F_0(r): F(r) for r ≥ 0 and 0 for r < 0.
double cd_value(const CDFunction& F, double r);
double cd_derivative(const CDFunction& F, double r);

/// True when F ≡ 0.
bool is_zero(const CDFunction& F);

struct CDFunctionCheck {
  bool zero_at_origin = false;
  bool nonnegative = false;
  bool ratio_increasing = false;  // F(r)/r strictly increasing on the grid
  bool integrable_tail = false;   // 1/F integrable at infinity
  double worst_ratio_step = 0.0;  // min over the grid of consecutive ratio differences

  bool ok() const { return zero_at_origin && nonnegative && ratio_increasing && integrable_tail; }
};

/// Checks the defining properties on a log grid over [lo, hi].
CDFunctionCheck check_cd_function(const CDFunction& F, double lo = 1e-3, double hi = 1e3,
                                  int points = 400);

/// Largest δ with F'(r) r ≥ (1+δ) F(r) on the grid; the growth exponent the
/// entropy bound needs.
double growth_exponent(const CDFunction& F, double lo = 1e-3, double hi = 1e3, int points = 400);

/// Descriptors: `zero`, `power:n=12,delta=1`, `nu:c,d[,scale=s][,out=o]`,
/// `table:r0:v0;r1:v1;...`.
CDFunction parse_cd_function(const std::string& descriptor);
std::string describe(const CDFunction& F);

}  // namespace curvcheck
