#include "curvcheck/resistance.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "curvcheck/error.hpp"
#include "curvcheck/operators.hpp"

namespace curvcheck {
namespace {

// Γ_z(f) = ½ fᵀ Q_z f with Q_z = Σ_w k(z,w)(e_w - e_z)(e_w - e_z)ᵀ
struct Constraints {
  const MarkovChain& chain;

  double value(std::size_t z, const Eigen::VectorXd& f) const {
    double s = 0.0;
    for (const auto& t : chain.neighbors(z)) {
      const double d = f(static_cast<Eigen::Index>(t.to)) - f(static_cast<Eigen::Index>(z));
      s += t.rate * d * d;
    }
    return 0.5 * s;
  }

  // accumulates w·∇Γ_z into grad and w·Q_z + v·∇Γ_z∇Γ_zᵀ into hess
  void add_derivatives(std::size_t z, const Eigen::VectorXd& f, double w, double v, Eigen::VectorXd& grad,
                       Eigen::MatrixXd& hess) const {
    const auto zi = static_cast<Eigen::Index>(z);
    Eigen::VectorXd g = Eigen::VectorXd::Zero(f.size());
    for (const auto& t : chain.neighbors(z)) {
      const auto wi = static_cast<Eigen::Index>(t.to);
      const double d = t.rate * (f(wi) - f(zi));
      g(wi) += d;
      g(zi) -= d;
      hess(wi, wi) += w * t.rate;
      hess(zi, zi) += w * t.rate;
      hess(wi, zi) -= w * t.rate;
      hess(zi, wi) -= w * t.rate;
    }
    grad += w * g;
    if (v != 0.0) hess.noalias() += v * g * g.transpose();
  }
};

double max_constraint(const Constraints& c, const Eigen::VectorXd& f, std::size_t n) {
  double worst = 0.0;
  for (std::size_t z = 0; z < n; ++z) worst = std::max(worst, c.value(z, f));
  return worst;
}

}  // namespace

ResistanceResult resistance_distance(const MarkovChain& chain, std::size_t x, std::size_t y,
                                     const ResistanceOptions& options) {
  const std::size_t n = chain.size();
  if (x >= n || y >= n) throw Error(ErrorKind::InvalidInput, "state index out of range");
  ResistanceResult result;
  result.f = StateFunction::Zero(static_cast<Eigen::Index>(n));
  if (x == y) {
    result.converged = true;
    return result;
  }
  const Constraints cons{chain};
  const auto xi = static_cast<Eigen::Index>(x);
  const auto yi = static_cast<Eigen::Index>(y);

  // strictly feasible start: graph distance from x scaled to max Γ = 1/2
  const auto dist = graph_distances(chain, x);
  Eigen::VectorXd f(static_cast<Eigen::Index>(n));
  for (std::size_t z = 0; z < n; ++z) f(static_cast<Eigen::Index>(z)) = dist[z];
  f *= std::sqrt(0.5 / max_constraint(cons, f, n));

  // barrier objective -t f(y) - Σ_z log(1 - Γ_z(f)), with f(x) pinned to 0
  const auto m = static_cast<double>(n);
  double t = 1.0;
  Eigen::VectorXd grad;
  for (;;) {
    for (int step = 0; step < options.max_newton_steps; ++step) {
      grad = Eigen::VectorXd::Zero(f.size());
      Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(f.size(), f.size());
      grad(yi) -= t;
      for (std::size_t z = 0; z < n; ++z) {
        const double slack = 1.0 - cons.value(z, f);
        cons.add_derivatives(z, f, 1.0 / slack, 1.0 / (slack * slack), grad, hess);
      }
      // pin f(x): drop its row and column
      grad(xi) = 0.0;
      hess.row(xi).setZero();
      hess.col(xi).setZero();
      hess(xi, xi) = 1.0;
      const Eigen::VectorXd direction = -hess.ldlt().solve(grad);
      const double decrement = -grad.dot(direction);
      ++result.newton_steps;
      if (!(decrement > 1e-24)) break;
      // damped Newton for self-concordant objectives; no function values needed,
      // which matters once t·f(y) swamps the barrier terms in double precision
      double alpha = 1.0 / (1.0 + std::sqrt(decrement));
      if (decrement < 0.0625) alpha = 1.0;
      Eigen::VectorXd trial = f + alpha * direction;
      while (max_constraint(cons, trial, n) >= 1.0 && alpha > 1e-16) {
        alpha *= 0.5;
        trial = f + alpha * direction;
      }
      if (alpha <= 1e-16) break;
      f = trial;
      if (decrement < 1e-20) break;
    }
    if (m / t < options.gap_tolerance) break;
    t *= 10.0;
  }

  // KKT certificate: multipliers from the stacked least-squares problem
  // [∇Γ; diag(1 - Γ)] λ = [e_y; 0] over the free coordinates, clamped to λ ≥ 0;
  // the residual is the worst of stationarity, complementarity and infeasibility
  const auto size = f.size();
  const auto m_rows = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd system = Eigen::MatrixXd::Zero(size + m_rows, m_rows);
  Eigen::VectorXd slack(m_rows);
  Eigen::MatrixXd unused = Eigen::MatrixXd::Zero(size, size);
  double infeasibility = 0.0;
  for (std::size_t z = 0; z < n; ++z) {
    const auto zi = static_cast<Eigen::Index>(z);
    slack(zi) = 1.0 - cons.value(z, f);
    infeasibility = std::max(infeasibility, -slack(zi));
    Eigen::VectorXd g = Eigen::VectorXd::Zero(size);
    cons.add_derivatives(z, f, 1.0, 0.0, g, unused);
    g(xi) = 0.0;
    system.block(0, zi, size, 1) = g;
    system(size + zi, zi) = slack(zi);
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(size + m_rows);
  rhs(yi) = 1.0;
  const Eigen::VectorXd lambda = system.completeOrthogonalDecomposition().solve(rhs).cwiseMax(0.0);
  const double stationarity = (system.topRows(size) * lambda - rhs.head(size)).lpNorm<Eigen::Infinity>();
  const double complementarity = lambda.cwiseProduct(slack).lpNorm<Eigen::Infinity>();
  result.kkt_residual = std::max({stationarity, complementarity, infeasibility});
  result.value = f(yi) - f(xi);
  result.upper_bound = result.value + m / t;
  result.converged = result.kkt_residual < options.kkt_tolerance;
  result.f = f;
  return result;
}

ResistanceDiameter resistance_diameter(const MarkovChain& chain, unsigned threads,
                                       const ResistanceOptions& options) {
  const std::size_t n = chain.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) pairs.emplace_back(x, y);
  std::vector<ResistanceResult> results(pairs.size());

  unsigned workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(workers, pairs.size())));
  const auto work = [&](unsigned w) {
    for (std::size_t i = w; i < pairs.size(); i += workers)
      results[i] = resistance_distance(chain, pairs[i].first, pairs[i].second, options);
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }

  ResistanceDiameter out;
  out.distances = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  out.comparison_slack = std::numeric_limits<double>::infinity();
  const double factor = std::sqrt(local_stats(chain).m1_sup / 2.0);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [x, y] = pairs[i];
    const double v = results[i].value;
    out.distances(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) = v;
    out.distances(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x)) = v;
    if (v > out.value) {
      out.value = v;
      out.from = x;
      out.to = y;
    }
    out.all_converged = out.all_converged && results[i].converged;
    out.max_kkt_residual = std::max(out.max_kkt_residual, results[i].kkt_residual);
    const double hops = graph_distances(chain, x)[y];
    out.comparison_slack = std::min(out.comparison_slack, factor * v - hops);
  }
  return out;
}

}  // namespace curvcheck
