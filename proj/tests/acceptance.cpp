// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "curvcheck/cd.hpp"
#include "curvcheck/error.hpp"
#include "curvcheck/example_chains.hpp"
#include "curvcheck/functionals.hpp"
#include "curvcheck/growth.hpp"
#include "curvcheck/inequalities.hpp"
#include "curvcheck/operators.hpp"
#include "curvcheck/resistance.hpp"
#include "curvcheck/semigroup.hpp"
#include "curvcheck/upsilon.hpp"
#include "fixtures.hpp"

using namespace curvcheck;
namespace fx = curvcheck::testing;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      if (!pass) detail << "; ";
      else detail.str("");
      detail << what;
      pass = false;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<Example> certified_examples() {
  return {
      make_example("two_point", {{{"a", 1}, {"b", 1}}, {}}),
      make_example("two_point", {{{"a", 1}, {"b", 2}}, {}}),
      make_example("complete", {{{"n", 3}, {"alpha", 0.25}}, {}}),
      make_example("complete", {{{"n", 5}, {"alpha", 0.25}}, {}}),
      make_example("weighted_complete", {{}, {1.0, 2.0, 3.0}}),
      make_example("hypercube", {{{"d", 2}}, {}}),
      make_example("hypercube", {{{"d", 3}}, {}}),
  };
}

// ---------------------------------------------------------------------------

Verdict operator_consistency() {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(101);
  double worst = 0.0;
  for (const auto& [name, chain] : fx::operator_fixtures()) {
    for (int trial = 0; trial < 1000; ++trial) {
      const double scale = trial % 3 == 0 ? 0.1 : (trial % 3 == 1 ? 1.0 : 3.0);
      const Eigen::VectorXd f = fx::gaussian(rng, chain.size(), scale);
      const Eigen::VectorXd def = psi2(chain, f, UpsilonKernel{});
      const Eigen::VectorXd rep = psi2_upsilon_rep(chain, f);
      for (Eigen::Index x = 0; x < def.size(); ++x)
        worst = std::max(worst, std::abs(def(x) - rep(x)) / std::max(1.0, std::abs(def(x))));
    }
  }
  const double elapsed = seconds_since(start);
  v.detail << "max relative difference " << worst << ", " << elapsed << " s";
  v.require(worst < 1e-10, "relative difference " + std::to_string(worst) + " >= 1e-10");
  v.require(elapsed < 10.0, "runtime " + std::to_string(elapsed) + " s >= 10 s");
  return v;
}

Verdict chain_rule() {
  Verdict v;
  std::mt19937_64 rng(102);
  double worst = 0.0;
  for (const auto& [name, chain] : fx::operator_fixtures())
    for (int trial = 0; trial < 1000; ++trial)
      worst = std::max(worst, chain_rule_residual(chain, fx::positive(rng, chain.size())).cwiseAbs().maxCoeff());
  v.detail << "max residual " << worst;
  v.require(worst < 1e-10, "residual " + std::to_string(worst) + " >= 1e-10");
  return v;
}

Verdict scaling_limits() {
  Verdict v;
  std::mt19937_64 rng(103);
  double min_order = INFINITY;
  for (const auto& [name, chain] : fx::operator_fixtures()) {
    for (int trial = 0; trial < 20; ++trial) {
      const Eigen::VectorXd f = fx::gaussian(rng, chain.size());
      const Eigen::VectorXd g2 = gamma2_op(chain, f);
      double err[2];
      const double lambdas[2] = {1e-3, 1e-4};
      for (int i = 0; i < 2; ++i)
        err[i] = (psi2(chain, lambdas[i] * f, UpsilonKernel{}) / (lambdas[i] * lambdas[i]) - g2).cwiseAbs().maxCoeff();
      // an error already at roundoff carries no order information
      if (err[0] < 1e-10 * (1 + g2.cwiseAbs().maxCoeff())) continue;
      const double order = std::log10(err[0] / err[1]);
      min_order = std::min(min_order, order);
      v.require(err[1] < err[0], std::string(name) + ": error does not decrease");
    }
  }
  v.detail << "min observed order " << min_order;
  v.require(min_order >= 0.95, "observed order " + std::to_string(min_order) + " below 1");
  return v;
}

Verdict certificates_hold() {
  Verdict v;
  const std::vector<Example> examples{
      make_example("two_point", {{{"a", 1}, {"b", 1}}, {}}),
      make_example("complete", {{{"n", 3}, {"alpha", 0.25}}, {}}),
      make_example("complete", {{{"n", 5}, {"alpha", 0.25}}, {}}),
      make_example("hypercube", {{{"d", 2}}, {}}),
      make_example("hypercube", {{{"d", 3}}, {}}),
      make_example("hypercube", {{{"d", 4}}, {}}),
  };
  std::size_t falsified = 0;
  double worst = INFINITY;
  for (const auto& ex : examples) {
    const auto verdict = verify_cd_random(ex.chain, ex.certificate->kappa, ex.certificate->F, 10000, 20240);
    worst = std::min(worst, verdict.worst_slack);
    if (verdict.status == CDVerdict::Status::Falsified) {
      ++falsified;
      v.require(false, ex.family + " falsified");
    }
  }
  if (v.pass) v.detail << falsified << " falsifications over " << examples.size() << " x 1e4 trials, worst slack " << worst;
  return v;
}

Verdict bakry_emery_two_point() {
  Verdict v;
  const auto estimate = estimate_kappa_infty(two_point_chain(1, 1), 0, CurvatureVariant::BakryEmery);
  v.detail << "estimate " << estimate.value;
  v.require(std::abs(estimate.value - 2.0) <= 1e-4, "estimate " + std::to_string(estimate.value) + " not 2 +- 1e-4");
  return v;
}

Verdict negative_criterion_k50() {
  Verdict v;
  const auto report = negative_criterion(complete_chain(50), {0}, 4.0);
  const auto& entry = report.entries.at(0);
  v.detail << "t* = " << entry.t_star << ", left side " << entry.min_lhs << ", CD slack " << entry.cd_slack;
  v.require(entry.t_star < 0.0, "minimizer not negative");
  v.require(entry.min_lhs < -1e-6, "left side " + std::to_string(entry.min_lhs) + " not below -1e-6");
  v.require(entry.violated && entry.cd_slack < 0.0, "violation not certified by a direct slack");
  return v;
}

Verdict entropy_ode() {
  Verdict v;
  std::mt19937_64 rng(107);
  double min_slack = INFINITY;
  double worst_fd_ratio = 0.0;
  const std::vector<double> grid = geometric_grid(1e-3, 1.5, 25);
  const std::vector<double> fd_times{0.01, 0.05, 0.2};
  for (const auto& ex : certified_examples()) {
    for (int trial = 0; trial < 20; ++trial) {
      const Eigen::VectorXd f = fx::density(rng, ex.chain);
      const auto traj = entropy_trajectory(ex.chain, f, grid);
      const auto ode = check_entropy_ode(traj, ex.certificate->kappa, ex.certificate->F);
      min_slack = std::min(min_slack, ode.min_slack);
      v.require(ode.monotone, ex.family + ": entropy not decreasing");
      if (trial >= 3) continue;
      const auto coarse = entropy_trajectory(ex.chain, f, fd_times, 1e-3);
      const auto fine = entropy_trajectory(ex.chain, f, fd_times, 1e-4);
      for (std::size_t i = 0; i < fd_times.size(); ++i) {
        // O(h²): the tenfold smaller step must shrink the error at least thirtyfold
        v.require(fine.fd_error[i] < coarse.fd_error[i] / 30 + 1e-11, ex.family + ": difference error not O(h^2)");
        if (coarse.fd_error[i] > 1e-9) worst_fd_ratio = std::max(worst_fd_ratio, fine.fd_error[i] / coarse.fd_error[i]);
      }
    }
  }
  if (v.pass) v.detail << "min slack " << min_slack << ", worst fine/coarse difference error " << worst_fd_ratio;
  v.require(min_slack >= -1e-8, "min slack " + std::to_string(min_slack) + " below -1e-8");
  return v;
}

Verdict growth_cross_checks() {
  Verdict v;
  double worst_phi = 0.0;
  for (const auto [n, kappa] : {std::pair{12.0, std::sqrt(3.0)}, std::pair{2.0, 1.0}})
    for (double r : {0.1, 1.0, 10.0, 100.0})
      worst_phi = std::max(worst_phi, std::abs(phi_power_quadrature(n, kappa, 1.0, r) - phi(LogGrowth{n, kappa}, r)));
  double worst_md = 0.0;
  for (const auto [n, kappa] : {std::pair{1.0, 1.0}, std::pair{4.0, 2.0}, std::pair{12.0, std::sqrt(3.0)}}) {
    const double closed = std::numbers::pi / 2 * std::sqrt(n / kappa);
    worst_md = std::max(worst_md, std::abs(mean_deviation_quadrature(LogGrowth{n, kappa}).value - closed));
  }
  v.detail << "growth quadrature error " << worst_phi << ", mean-deviation error " << worst_md;
  v.require(worst_phi <= 1e-8, "growth quadrature differs by " + std::to_string(worst_phi));
  v.require(worst_md <= 1e-6, "mean-deviation quadrature differs by " + std::to_string(worst_md));
  return v;
}

Verdict poisson_sharpness_check() {
  Verdict v;
  double previous = 0.0;
  std::ostringstream ratios;
  for (double k : {1.0, 2.0, 3.0, 5.0}) {
    try {
      const auto s = poisson_sharpness(1.0, k, 60);
      const double ent_err = std::abs(s.entropy - s.entropy_closed) / s.entropy_closed;
      const double fis_err = std::abs(s.fisher - s.fisher_closed) / s.fisher_closed;
      ratios << " k=" << k << ":" << s.ratio;
      v.require(ent_err <= 1e-6 && fis_err <= 1e-6, "k=" + std::to_string(k) + " misses the closed forms");
      v.require(s.ratio > previous && s.ratio < 1.0, "ratio not increasing below 1 at k=" + std::to_string(k));
      previous = s.ratio;
    } catch (const Error& e) {
      v.require(false, "k=" + std::to_string(k) + ": " + e.what());
    }
  }
  if (v.pass) v.detail << "ratios" << ratios.str();
  return v;
}

Verdict inequality_suites() {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  const auto ex = make_example("complete", {{{"n", 3}, {"alpha", 0.25}}, {}});
  const auto& power = std::get<PowerType>(ex.certificate->F);
  const GrowthFunction growth = growth_from_power_cd(power.n, ex.certificate->kappa, power.delta);
  const auto& log_growth = std::get<LogGrowth>(growth);
  const MarkovChain& chain = ex.chain;
  std::mt19937_64 rng(110);
  const std::vector<double> t_grid{-10, -3, -1, -0.1, 0.1, 1, 3, 10};
  InequalityReport ei, ultra, exp_int, nash;
  for (int i = 0; i < 1000; ++i) {
    const double scale = i % 2 ? 1.0 : 4.0;
    ei.merge(ei_check(chain, fx::density(rng, chain), growth));
    const Eigen::VectorXd g = fx::gaussian(rng, chain.size(), scale);
    for (double t : {0.01, 0.1, 1.0}) ultra.merge(ultracontractivity_check(chain, g, growth, t));
    const double lip = lipschitz_seminorm(chain, g);
    if (lip > 0.0) exp_int.merge(exp_integrability_check(chain, g / lip, growth, t_grid));
    Eigen::VectorXd h = fx::gaussian(rng, chain.size(), scale);
    for (Eigen::Index x = 0; x < h.size(); ++x)
      if (h(x) == 0.0) h(x) = scale;
    nash.merge(nash_check(chain, h, log_growth.n / 2, log_growth.kappa * log_growth.n, 1.0));
  }
  const double elapsed = seconds_since(start);
  v.detail << "worst slacks: ei " << ei.worst_slack << ", ultra " << ultra.worst_slack << ", exp " << exp_int.worst_slack
           << ", nash " << nash.worst_slack << "; " << elapsed << " s";
  v.require(ei.worst_slack >= 0.0, "entropy-information slack negative");
  v.require(ultra.worst_slack >= 0.0, "ultracontractivity slack negative");
  v.require(exp_int.worst_slack >= 0.0, "exponential integrability slack negative");
  v.require(nash.worst_slack >= 0.0, "Nash slack negative");
  v.require(elapsed < 60.0, "runtime " + std::to_string(elapsed) + " s >= 60 s");
  return v;
}

Verdict resistance() {
  Verdict v;
  const double two = resistance_distance(two_point_chain(1, 1), 0, 1).value;
  const double path = resistance_distance(path_chain(3), 0, 2).value;
  v.require(std::abs(two - std::sqrt(2.0)) <= 1e-6, "two-point distance " + std::to_string(two));
  v.require(std::abs(path - 2.0) <= 1e-6, "path-3 distance " + std::to_string(path));

  std::vector<fx::Fixture> fixtures = fx::operator_fixtures();
  for (const auto& ex : certified_examples()) fixtures.push_back({ex.family.c_str(), ex.chain});
  std::size_t checked = 0;
  for (const auto& [name, chain] : fixtures) {
    if (chain.size() > 12) continue;
    ++checked;
    const auto diam = resistance_diameter(chain);
    v.require(diam.all_converged && diam.max_kkt_residual < 1e-6, std::string(name) + ": solver not converged");
    const Eigen::MatrixXd& d = diam.distances;
    for (Eigen::Index x = 0; x < d.rows(); ++x)
      for (Eigen::Index y = 0; y < d.rows(); ++y) {
        if ((x == y) != (d(x, y) == 0.0) || std::abs(d(x, y) - d(y, x)) > 1e-6)
          v.require(false, std::string(name) + ": not a metric");
        for (Eigen::Index z = 0; z < d.rows(); ++z)
          if (d(x, z) > d(x, y) + d(y, z) + 1e-6) v.require(false, std::string(name) + ": triangle inequality fails");
      }
  }
  double worst_margin = INFINITY;
  for (const auto& ex : certified_examples()) {
    const auto* power = std::get_if<PowerType>(&ex.certificate->F);
    if (!power || power->delta != 1.0 || !(ex.certificate->kappa > 0.0)) continue;
    const double bound = std::numbers::pi * std::sqrt(power->n / ex.certificate->kappa);
    const double diam = resistance_diameter(ex.chain).value;
    worst_margin = std::min(worst_margin, bound - diam);
    v.require(diam <= bound, ex.family + ": diameter above the bound");
  }
  if (v.pass)
    v.detail << "two-point " << two << ", path-3 " << path << ", metric on " << checked
             << " fixtures, min bound margin " << worst_margin;
  return v;
}

Verdict nu_convexity() {
  Verdict v;
  double min_value = INFINITY;
  for (int j = 1; j <= 10; ++j) {
    const double lambda = 0.1 * j;
    for (int i = 0; i <= 40000; ++i) {
      const double r = -20.0 + 1e-3 * i;
      min_value = std::min(min_value, nu_second(1.0 + lambda, lambda, r));
    }
  }
  v.detail << "min " << min_value;
  v.require(min_value > 0.0, "minimum not positive");
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"operator consistency", operator_consistency},
      {"chain-rule identity", chain_rule},
      {"scaling limits", scaling_limits},
      {"certificates hold", certificates_hold},
      {"Bakry-Emery two-point", bakry_emery_two_point},
      {"negative criterion K50", negative_criterion_k50},
      {"entropy ODE", entropy_ode},
      {"growth cross-checks", growth_cross_checks},
      {"Poisson sharpness", poisson_sharpness_check},
      {"inequality suites on K3", inequality_suites},
      {"resistance distances", resistance},
      {"nu'' positivity", nu_convexity},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail.str(std::string("exception: ") + e.what());
    }
    if (!v.pass) ++failures;
    std::printf("criterion %2zu %-26s %s  %s\n", i + 1, criteria[i].first, v.pass ? "PASS" : "FAIL",
                v.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
