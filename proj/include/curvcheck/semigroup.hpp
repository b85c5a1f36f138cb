#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "curvcheck/cd_function.hpp"
#include "curvcheck/chain.hpp"

namespace curvcheck {

/// P_t = exp(tL) through the symmetric matrix S = D^{1/2} L D^{-1/2}, D = diag(π).
/// The eigendecomposition is computed once; evolve() is then O(n^2) per call.
/// Mapping back through D^{-1/2} costs about ε/√π(x) absolute accuracy at x, so
/// when π spans more than 1e8 evolve() uses a Padé matrix exponential of tL
/// instead (O(n^3) per call).
class HeatSemigroup {
 public:
  explicit HeatSemigroup(const MarkovChain& chain);

  StateFunction evolve(const Eigen::Ref<const Eigen::VectorXd>& f, double t) const;

  /// Smallest nonzero |eigenvalue| of L.
  double spectral_gap() const;
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }

 private:
  Eigen::VectorXd sqrt_pi_;
  Eigen::MatrixXd generator_;  // kept only for graded chains
  bool graded_ = false;
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd eigenvectors_;
};

/// One-shot P_t f. Throws InvalidInput for t < 0.
StateFunction evolve(const MarkovChain& chain, const Eigen::Ref<const Eigen::VectorXd>& f, double t);

/// Entries below the floor are raised to it; returns how many were touched.
int clamp_positive(Eigen::VectorXd& f, double floor = 1e-300);

/// `geom:t0=..,ratio=..,count=..` or `lin:a,b,n`.
std::vector<double> parse_time_grid(const std::string& descriptor);
std::vector<double> geometric_grid(double t0, double ratio, int count);

struct EntropyTrajectory {
  std::vector<double> times;
  std::vector<double> lambda;               // Ent(P_t f)
  std::vector<double> lambda_prime;         // -I(P_t f)
  std::vector<double> lambda_double_prime;  // 2 ∫ P_t f Ψ_{2,Υ}(log P_t f) dμ
  /// |central difference of Λ - Λ'| at each time with the step used below.
  std::vector<double> fd_error;
  double fd_step = 0.0;
  int clamped_entries = 0;
};

/// Throws NonDensity when |∫ f dμ - 1| exceeds the chain tolerance, and
/// NonPositiveInput for non-positive f.
EntropyTrajectory entropy_trajectory(const MarkovChain& chain,
                                     const Eigen::Ref<const Eigen::VectorXd>& f,
                                     const std::vector<double>& times, double fd_step = 1e-4);

struct EntropyOdeReport {
  std::vector<double> slack;  // Λ'' + 2κΛ' - 2F(-Λ')
  double min_slack = 0.0;
  std::size_t argmin = 0;
  bool monotone = true;  // Λ non-increasing along the grid
};

EntropyOdeReport check_entropy_ode(const EntropyTrajectory& trajectory, double kappa,
                                   const CDFunction& F);

/// Columns t, Lambda, LambdaPrime, LambdaDoublePrime, slack.
void write_trajectory_csv(std::ostream& out, const EntropyTrajectory& trajectory,
                          const EntropyOdeReport& ode);

}  // namespace curvcheck
