#include "curvcheck/semigroup.hpp"

#include <cmath>
#include <ostream>

#include <unsupported/Eigen/MatrixFunctions>

#include "curvcheck/error.hpp"
#include "curvcheck/functionals.hpp"
#include "curvcheck/operators.hpp"
#include "descriptor.hpp"

namespace curvcheck {

HeatSemigroup::HeatSemigroup(const MarkovChain& chain) : sqrt_pi_(chain.pi().cwiseSqrt()) {
  const Eigen::MatrixXd& gen = chain.generator();
  Eigen::MatrixXd sym = sqrt_pi_.asDiagonal() * gen * sqrt_pi_.cwiseInverse().asDiagonal();
  sym = 0.5 * (sym + sym.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
  // the top eigenvalue is the conserved mode; pin it so mass is preserved exactly
  Eigen::Index top = 0;
  eigenvalues_.maxCoeff(&top);
  eigenvalues_(top) = 0.0;
  if (chain.pi().maxCoeff() > 1e8 * chain.pi().minCoeff()) {
    graded_ = true;
    generator_ = gen;
  }
}

StateFunction HeatSemigroup::evolve(const Eigen::Ref<const Eigen::VectorXd>& f, double t) const {
  if (t < 0.0) throw Error(ErrorKind::InvalidInput, "negative time");
  if (t == 0.0) return f;
  if (graded_) return (t * generator_).exp() * f;
  const Eigen::VectorXd coeffs = eigenvectors_.transpose() * sqrt_pi_.cwiseProduct(f);
  const Eigen::VectorXd decayed = coeffs.cwiseProduct((t * eigenvalues_).array().exp().matrix());
  return (eigenvectors_ * decayed).cwiseQuotient(sqrt_pi_);
}

double HeatSemigroup::spectral_gap() const {
  double gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < eigenvalues_.size(); ++i)
    if (eigenvalues_(i) != 0.0) gap = std::min(gap, -eigenvalues_(i));
  return gap;
}

StateFunction evolve(const MarkovChain& chain, const Eigen::Ref<const Eigen::VectorXd>& f, double t) {
  if (t < 0.0) throw Error(ErrorKind::InvalidInput, "negative time");
  if (t == 0.0) return f;
  return HeatSemigroup(chain).evolve(f, t);
}

int clamp_positive(Eigen::VectorXd& f, double floor) {
  int touched = 0;
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    if (f(i) < floor) {
      f(i) = floor;
      ++touched;
    }
  }
  return touched;
}

std::vector<double> geometric_grid(double t0, double ratio, int count) {
  if (!(t0 > 0.0) || !(ratio > 1.0) || count < 1)
    throw Error(ErrorKind::InvalidInput, "geometric grid needs t0 > 0, ratio > 1, count >= 1");
  std::vector<double> times;
  times.reserve(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) times.push_back(t0 * std::pow(ratio, j));
  return times;
}

std::vector<double> parse_time_grid(const std::string& descriptor) {
  const Descriptor d = parse_descriptor(descriptor);
  if (d.head == "geom") {
    return geometric_grid(d.number_or("t0", 1e-3), d.number_or("ratio", 1.5),
                          static_cast<int>(d.number_or("count", 30)));
  }
  if (d.head == "lin") {
    double a = d.number_or("a", 0.0);
    double b = d.number_or("b", 1.0);
    double n = d.number_or("n", 11);
    if (d.positional.size() == 3) {
      a = d.positional[0];
      b = d.positional[1];
      n = d.positional[2];
    }
    if (!(a >= 0.0) || !(b > a) || n < 2) throw Error(ErrorKind::InvalidInput, "lin grid needs 0 <= a < b, n >= 2");
    std::vector<double> times;
    const int count = static_cast<int>(n);
    for (int j = 0; j < count; ++j) times.push_back(a + (b - a) * j / (count - 1));
    return times;
  }
  throw Error(ErrorKind::InvalidInput, "unknown time grid '" + d.head + "'");
}

EntropyTrajectory entropy_trajectory(const MarkovChain& chain,
                                     const Eigen::Ref<const Eigen::VectorXd>& f,
                                     const std::vector<double>& times, double fd_step) {
  if ((f.array() <= 0.0).any()) throw Error(ErrorKind::NonPositiveInput, "trajectory needs positive f");
  const double mass = integrate_pi(chain, f);
  if (std::abs(mass - 1.0) > std::max(chain.options().tolerance, 1e-10))
    throw Error(ErrorKind::NonDensity, "∫ f dμ = " + std::to_string(mass));

  const HeatSemigroup semigroup(chain);
  EntropyTrajectory traj;
  traj.fd_step = fd_step;
  const auto ent_at = [&](double t) {
    Eigen::VectorXd g = semigroup.evolve(f, t);
    clamp_positive(g);
    return entropy(chain, g);
  };

  for (double t : times) {
    Eigen::VectorXd g = semigroup.evolve(f, t);
    traj.clamped_entries += clamp_positive(g);
    const Eigen::VectorXd log_g = g.unaryExpr([](double v) { return std::log(v); });
    traj.times.push_back(t);
    traj.lambda.push_back(entropy(chain, g));
    traj.lambda_prime.push_back(-fisher_information(chain, g));
    traj.lambda_double_prime.push_back(
        2.0 * chain.pi().dot(g.cwiseProduct(psi2(chain, log_g, UpsilonKernel{}))));

    double fd = 0.0;
    if (t >= fd_step) {
      fd = (ent_at(t + fd_step) - ent_at(t - fd_step)) / (2.0 * fd_step);
    } else {
      fd = (-3.0 * ent_at(t) + 4.0 * ent_at(t + fd_step) - ent_at(t + 2.0 * fd_step)) / (2.0 * fd_step);
    }
    traj.fd_error.push_back(std::abs(fd - traj.lambda_prime.back()));
  }
  return traj;
}

EntropyOdeReport check_entropy_ode(const EntropyTrajectory& trajectory, double kappa,
                                   const CDFunction& F) {
  EntropyOdeReport report;
  report.min_slack = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < trajectory.times.size(); ++i) {
    const double lp = trajectory.lambda_prime[i];
    const double s = trajectory.lambda_double_prime[i] + 2.0 * kappa * lp - 2.0 * cd_value(F, -lp);
    report.slack.push_back(s);
    if (s < report.min_slack) {
      report.min_slack = s;
      report.argmin = i;
    }
    if (i > 0 && trajectory.lambda[i] > trajectory.lambda[i - 1] + 1e-14 * (1.0 + trajectory.lambda[i - 1]))
      report.monotone = false;
  }
  if (trajectory.times.empty()) report.min_slack = 0.0;
  return report;
}

void write_trajectory_csv(std::ostream& out, const EntropyTrajectory& trajectory,
                          const EntropyOdeReport& ode) {
  const auto old_precision = out.precision(17);
  out << "t,Lambda,LambdaPrime,LambdaDoublePrime,slack\n";
  for (std::size_t i = 0; i < trajectory.times.size(); ++i) {
    out << trajectory.times[i] << ',' << trajectory.lambda[i] << ',' << trajectory.lambda_prime[i] << ','
        << trajectory.lambda_double_prime[i] << ',' << ode.slack[i] << '\n';
  }
  out.precision(old_precision);
}

}  // namespace curvcheck
