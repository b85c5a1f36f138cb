#pragma once

#include <limits>
#include <string>
#include <variant>

#include "curvcheck/cd_function.hpp"

namespace curvcheck {

/// Φ(r) = (n/2) log(1 + r/(κn)).
struct LogGrowth {
  double n = 1.0;
  double kappa = 1.0;
};

/// Φ(r) = ((κn)^{1/δ} / (2κ)) ∫_{(κn)^{1/δ}/r}^∞ v^{δ-2} / (v^δ + 1) dv, by quadrature.
struct PowerIntegral {
  double n = 1.0;
  double kappa = 1.0;
  double delta = 2.0;
};

/// Φ(r) = c r, the modified log-Sobolev case.
struct Linear {
  double c = 1.0;
};

using GrowthFunction = std::variant<LogGrowth, PowerIntegral, Linear>;

double phi(const GrowthFunction& g, double r);
double phi_prime(const GrowthFunction& g, double r);
double phi_second(const GrowthFunction& g, double r);
/// Θ(r) = Φ(r) - Φ'(r) r.
double theta(const GrowthFunction& g, double r);

bool is_bounded(const GrowthFunction& g);
/// lim_{r→∞} Φ(r); +inf when unbounded.
double phi_limit(const GrowthFunction& g);

/// δ = 1 gives LogGrowth, δ > 1 PowerIntegral. Throws BadParams.
GrowthFunction growth_from_power_cd(double n, double kappa, double delta);

/// The integral formula evaluated by quadrature for any δ ≥ 1, including δ = 1
/// where it must reproduce LogGrowth. Throws QuadratureNonConvergent.
double phi_power_quadrature(double n, double kappa, double delta, double r);

/// Descriptors: `log:n=12,kappa=1.7`, `power:n=1,kappa=1,delta=2`, `linear:c=0.5`.
GrowthFunction parse_growth(const std::string& descriptor);
std::string describe(const GrowthFunction& g);

/// Inverse of r ↦ F(r)/r by bracketed bisection (relative width 1e-12).
double inverse_ratio(const CDFunction& F, double y);

/// ∫_0^∞ G(κ / (e^{2δκt}(1 + κI/F(I)) - 1)) dt. Throws DivergentIntegral when the
/// tail does not decay and BadParams for I ≤ 0 or F(I) = 0.
double main_entropy_bound(double fisher, double kappa, const CDFunction& F, double delta);

}  // namespace curvcheck
