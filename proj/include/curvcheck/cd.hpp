#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "curvcheck/cd_function.hpp"
#include "curvcheck/chain.hpp"

namespace curvcheck {

// ---------------------------------------------------------------------------
// Pointwise slack of CD_Υ(κ,F):  Ψ_{2,Υ}(f)(x) - κ Ψ_Υ(f)(x) - F_0(-Lf(x)).

struct SlackTerms {
  double psi2 = 0.0;
  double psi = 0.0;
  double generator = 0.0;  // Lf(x)
  double dimension = 0.0;  // F_0(-Lf(x))
  double kappa = 0.0;

  double slack() const { return psi2 - kappa * psi - dimension; }
  /// Roundoff allowance: 1e-8 (1 + |Ψ₂| + |κΨ| + |F_0|).
  double tolerance() const;
  bool violated() const { return slack() < -tolerance(); }
};

SlackTerms cd_slack_terms(const MarkovChain& chain, std::size_t x,
                          const Eigen::Ref<const Eigen::VectorXd>& f, double kappa, const CDFunction& F);
double cd_slack(const MarkovChain& chain, std::size_t x, const Eigen::Ref<const Eigen::VectorXd>& f,
                double kappa, const CDFunction& F);

// ---------------------------------------------------------------------------
// Randomized falsification.

struct CDVerdict {
  enum class Status { CertifiedByFamily, Falsified, PassedSampling };

  Status status = Status::PassedSampling;
  double worst_slack = 0.0;
  std::size_t worst_trial = 0;
  std::size_t worst_state = 0;
  /// Present iff falsified: the lowest-index violating trial.
  std::optional<StateFunction> witness;
  std::optional<std::size_t> witness_state;
  double witness_slack = 0.0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
};

std::string_view to_string(CDVerdict::Status status);

struct SamplerConfig {
  std::vector<double> scales{0.1, 1.0, 10.0};
  bool spikes = true;      // f = t off a state, 0 at it
  bool indicators = true;  // f = a at one state, 0 elsewhere
  bool local = true;       // Gaussian values on a 2-ball, 0 at its center
  bool constants_only = false;
  unsigned threads = 0;  // 0: hardware concurrency
};

/// Trial i draws its function from an mt19937_64 seeded by (seed, i), so the
/// verdict does not depend on the thread count.
CDVerdict verify_cd_random(const MarkovChain& chain, double kappa, const CDFunction& F,
                           std::size_t trials, std::uint64_t seed, const SamplerConfig& config = {});

/// The function used by trial `index`; exposed so witnesses can be replayed.
StateFunction sample_trial_function(const MarkovChain& chain, std::uint64_t seed, std::size_t index,
                                    const SamplerConfig& config = {});

// ---------------------------------------------------------------------------
// Curvature and dimension estimates at a state. The search runs over f supported
// on the 2-ball of x with f(x) = 0, which loses nothing for evaluation because
// Ψ_{2,Υ}(f)(x) only reads that ball.

enum class CurvatureVariant { Upsilon, BakryEmery };

struct SearchOptions {
  std::vector<double> scales{0.1, 1.0, 10.0};
  int starts_per_scale = 8;
  int max_iterations = 4000;
  std::uint64_t seed = 1;
};

struct KappaEstimate {
  /// Exact minimum of every ratio evaluated, so an upper bound on any valid κ.
  double value = 0.0;
  StateFunction witness;
  std::size_t evaluations = 0;
};

/// inf Ψ_{2,Υ}/Ψ_Υ (or Γ₂/Γ) at x. Throws DegenerateNeighborhood.
KappaEstimate estimate_kappa_infty(const MarkovChain& chain, std::size_t x, CurvatureVariant variant,
                                   const SearchOptions& options = {});

struct DimensionEstimate {
  double value = 0.0;  // sup of (-Lf)^{1+δ} / (Ψ₂ - κΨ); +inf when `infinite`
  bool infinite = false;
  StateFunction witness;
  std::size_t evaluations = 0;
};

DimensionEstimate estimate_dimension(const MarkovChain& chain, std::size_t x, double kappa, double delta,
                                     const SearchOptions& options = {});

/// Birth-death probe at x ≥ 2: f(x-1) = s, f(x-2) = 2s, f = 0 elsewhere,
/// maximized over s < 0 (grid plus Brent refinement).
DimensionEstimate birth_death_dimension_probe(const MarkovChain& chain, std::size_t x, double kappa,
                                              double delta);

// ---------------------------------------------------------------------------
// Constants and constructions.

/// Optimal c with Υ(r) + Υ(-r) ≥ c |r|^{1+δ}; c_1 = 1 exactly.
double c_delta(double delta);

/// γ(r) = coef · |r|^{1+δ}.
struct PowerGamma {
  double coef = 1.0;
  double delta = 1.0;
};
/// γ(r) = ν_{c,d}(-r).
struct NuGamma {
  double c = 2.0;
  double d = 5.0;
};
using GammaKernel = std::variant<PowerGamma, NuGamma>;

double gamma_value(const GammaKernel& gamma, double r);

/// F(r) = α⋆ M_{1,inf} γ(r / M_{1,sup}) with α⋆ = min α. Power γ gives PowerType,
/// ν-type γ gives NuBased. Throws BadParams on a size mismatch or negative α.
CDFunction jensen_dimension_bound(const MarkovChain& chain, const GammaKernel& gamma,
                                  const std::vector<double>& alpha);

/// Minimum over seeded samples and states of
/// Ψ₂(f)(x) - κΨ(f)(x) - α(x) Σ_y k(x,y) γ(f(x) - f(y)).
double jensen_premise_slack(const MarkovChain& chain, double kappa, const GammaKernel& gamma,
                            const std::vector<double>& alpha, std::size_t trials, std::uint64_t seed);

struct NegativeCriterionEntry {
  std::size_t state = 0;
  double ratio = 0.0;     // N(x) / M_1(x)^2
  double t_star = 0.0;    // minimizer over t < 0
  double min_lhs = 0.0;   // left side of the spike condition at t_star
  double cd_slack = 0.0;  // direct CD_Υ(0, r²/n) slack of the spike at t_star
  bool violated = false;
};

struct NegativeCriterionReport {
  double n_target = 0.0;
  std::vector<NegativeCriterionEntry> entries;
  bool any_violation() const;
};

/// For the spike f = t off x, 0 at x:
///   (N/M_1²)(Υ'(t)t + Υ(-t)) + Υ'(t)t - Υ(t) - t²/n,
/// minimized over t < 0. Negative values certify that CD_Υ(0,n) fails at x.
NegativeCriterionReport negative_criterion(const MarkovChain& chain, const std::vector<std::size_t>& states,
                                           double n_target);

/// Left side of the spike condition at a given t.
double spike_condition(double ratio, double t, double n_target);

struct IndicatorProbe {
  double entropy_closed = 0.0;
  double fisher_closed = 0.0;
  double entropy_direct = 0.0;
  double fisher_direct = 0.0;
  StateFunction f;
};

/// f_x = ε off x and (1 - ε(1 - π(x)))/π(x) at x, a probability density.
IndicatorProbe indicator_probe(const MarkovChain& chain, std::size_t x, double epsilon);

// ---------------------------------------------------------------------------
// (R)-Ricci-flatness.

/// eta[x][i] maps each u in the closed 1-ball of x to η_i(u).
using EtaMaps = std::vector<std::vector<std::map<std::size_t, std::size_t>>>;

struct RicciFlatReport {
  bool passed = true;
  int violated_condition = 0;  // 1..4, 0 when passed
  std::size_t center = 0;
  std::size_t map_index = 0;
  std::string detail;
};

/// Checks the four neighborhood-map conditions at every vertex of a d-regular
/// graph with unit rates. Throws MalformedMaps for wrong arity or domains and
/// InvalidInput for a graph that is not d-regular with unit rates.
RicciFlatReport ricci_flat_check(const MarkovChain& chain, const EtaMaps& eta);

}  // namespace curvcheck
