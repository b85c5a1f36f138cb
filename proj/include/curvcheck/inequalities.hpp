#pragma once

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "curvcheck/chain.hpp"
#include "curvcheck/growth.hpp"
#include "curvcheck/quadrature.hpp"

namespace curvcheck {

/// Outcome of an inequality check. Slacks are right side minus left side, in
/// the units noted per check; a slack below -tolerance·(1 + scale) fails.
struct InequalityReport {
  std::string kind;
  bool pass = true;
  double worst_slack = std::numeric_limits<double>::infinity();
  std::map<std::string, double> params;
  std::vector<double> slacks;
  std::optional<StateFunction> witness;  // set whenever pass is false
  double quad_error = 0.0;
  double tolerance = 1e-10;

  void record(double slack, double scale, const Eigen::Ref<const Eigen::VectorXd>& input);
  /// Folds another report of the same kind into this one.
  void merge(const InequalityReport& other);
};

// ---------------------------------------------------------------------------
// Entropy-information inequality

/// Ent(f) ≤ m Φ(I(f)/m) with m = ∫ f dμ (m = 1 for densities), plus the
/// linearized family Ent(f) ≤ Φ'(r) I(f) + m Θ(r) on a log grid of r and at
/// r = I(f)/m. slacks[0] is the plain form.
InequalityReport ei_check(const MarkovChain& chain, const Eigen::Ref<const Eigen::VectorXd>& f,
                          const GrowthFunction& growth);

struct PoissonSharpness {
  double entropy = 0.0;
  double fisher = 0.0;
  double ratio = 0.0;
  double entropy_closed = 0.0;  // λ(k e^k - e^k + 1)
  double fisher_closed = 0.0;   // λ k (e^k - 1)
  double ratio_closed = 0.0;
  double tail_mass = 0.0;       // mass of the tilted law beyond the cutoff
  double renormalization = 1.0;
};

/// Poisson mass of Poisson(λ e^k) above the cutoff; f_k π_λ is that law.
double poisson_tilted_tail(double lambda, double k, int cutoff);

/// Entropy and Fisher information of f_k(x) = e^{kx - λ(e^k - 1)} on the
/// Poisson chain truncated at `cutoff`. Throws TruncationInsufficient when the
/// tilted tail mass exceeds 1e-8.
PoissonSharpness poisson_sharpness(double lambda, double k, int cutoff);

// ---------------------------------------------------------------------------
// Ultracontractivity

struct UltraParams {
  double t = 0.0;
  double m = 0.0;
  double quad_error = 0.0;
};

/// t(ϱ) = ∫_p^q Φ'(ϱr)/r dr and m(ϱ) = Φ(ϱp)/p - Φ(ϱq)/q, 1 ≤ p ≤ q ≤ ∞.
/// Throws NonIntegrableTail for q = ∞ when Φ'(r)/r is not integrable.
UltraParams ultracontractivity_params(const GrowthFunction& growth, double p, double q, double uc_rho);

/// Upper bound on log(‖e^{P_t f}‖_∞ / ‖e^f‖_1) implied by Φ at time t:
/// (n/2) log(1 + 1/(2κt)) for LogGrowth, Φ((n/(2δt))^{1/δ}) for PowerIntegral.
/// Throws NonIntegrableTail for Linear.
double ultracontractivity_log_bound(const GrowthFunction& growth, double t);

/// Slack (log units) of ‖e^{P_t f}‖_∞ ≤ e^{bound(t)} ‖e^f‖_1.
InequalityReport ultracontractivity_check(const MarkovChain& chain,
                                          const Eigen::Ref<const Eigen::VectorXd>& f,
                                          const GrowthFunction& growth, double t);

/// Slack (log units) of ‖e^{P_{t(ϱ)} f}‖_q ≤ ‖e^f‖_p e^{m(ϱ)}.
InequalityReport ultracontractivity_check(const MarkovChain& chain,
                                          const Eigen::Ref<const Eigen::VectorXd>& f,
                                          const GrowthFunction& growth, double p, double q,
                                          double uc_rho);

// ---------------------------------------------------------------------------
// Lipschitz functions, exponential integrability, diameter

/// max_x sqrt(Γ(f)(x)).
double lipschitz_seminorm(const MarkovChain& chain, const Eigen::Ref<const Eigen::VectorXd>& f);

/// Slack of I(e^{sf}) ≤ C² s² ∫ e^{sf} dμ for each s, C the Lipschitz seminorm.
InequalityReport fisher_lipschitz_check(const MarkovChain& chain,
                                        const Eigen::Ref<const Eigen::VectorXd>& f,
                                        const std::vector<double>& s_grid);

/// ∫_0^upper Φ(s²)/s² ds; closed form for LogGrowth. Throws NonIntegrableGrowth
/// for upper = ∞ when the tail diverges.
double mean_deviation_integral(const GrowthFunction& growth,
                               double upper = std::numeric_limits<double>::infinity());
/// The same integral, always by quadrature.
QuadResult mean_deviation_quadrature(const GrowthFunction& growth,
                                     double upper = std::numeric_limits<double>::infinity());

/// 2 ∫_0^∞ Φ(s²)/s² ds. Throws NonIntegrableGrowth.
double diameter_bound(const GrowthFunction& growth);

/// For 1-Lipschitz f: log ∫ e^{tf} dμ ≤ |t| ∫_0^{|t|} Φ(s²)/s² ds + t ∫ f dμ for each
/// t, and ‖f - ∫ f dμ‖_∞ ≤ ∫_0^∞ Φ(s²)/s² ds when that integral is finite (the
/// last slack). Throws InvalidInput when f is not 1-Lipschitz.
InequalityReport exp_integrability_check(const MarkovChain& chain,
                                         const Eigen::Ref<const Eigen::VectorXd>& f,
                                         const GrowthFunction& growth, const std::vector<double>& t_grid);

// ---------------------------------------------------------------------------
// Modified Nash inequality

/// Slack (log units) of ‖f‖_2^{2α+2} ≤ (A‖f‖_2² + I(f²)/β)^α ‖f‖_1².
/// Throws VanishingEntry when f has a zero and BadParams unless A ≥ 1, α, β > 0.
InequalityReport nash_check(const MarkovChain& chain, const Eigen::Ref<const Eigen::VectorXd>& f,
                            double alpha, double beta, double A);

// ---------------------------------------------------------------------------
// Further probes

struct NormDerivativeCheck {
  double lhs = 0.0;  // q ‖e^{P_t f}‖_q^{q-1} d/dt ‖e^{P_t f}‖_{q(t)}, by central differences
  double rhs = 0.0;  // (q'/q) Ent(e^{q P_t f}) - I(e^{q P_t f})
  double relative_error = 0.0;
};

/// Norm-derivative identity at time t for q(s) = q + q_prime (s - t).
NormDerivativeCheck norm_derivative_identity(const MarkovChain& chain,
                                             const Eigen::Ref<const Eigen::VectorXd>& f, double t,
                                             double q, double q_prime, double h = 1e-5);

struct PartialSumsProbe {
  StateFunction f;            // f(x) = Σ_{k=1}^{x} b(k)^{-1/2}
  StateFunction two_gamma;    // 2Γ(f) computed by the operator
  StateFunction two_gamma_closed;  // a(x)/b(x+1) + 1 (first term only at x = 0, second only at the cutoff)
  double lipschitz = 0.0;
  double range = 0.0;         // f(cutoff) - f(0)
};

/// Partial-sums test function on a birth-death chain with labels 0..N.
PartialSumsProbe partial_sums_probe(const MarkovChain& chain);

/// Ent(f) ≤ Φ(∞) ∫ f dμ for bounded Φ; vacuous (slack +inf) otherwise.
InequalityReport finite_entropy_bound_check(const MarkovChain& chain,
                                            const Eigen::Ref<const Eigen::VectorXd>& f,
                                            const GrowthFunction& growth);

}  // namespace curvcheck
