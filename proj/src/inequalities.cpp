#include "curvcheck/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>

#include "curvcheck/error.hpp"
#include "curvcheck/example_chains.hpp"
#include "curvcheck/functionals.hpp"
#include "curvcheck/operators.hpp"
#include "curvcheck/semigroup.hpp"

namespace curvcheck {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// log ∫ e^{s f} dμ without overflow
double log_exp_moment(const MarkovChain& chain, const Eigen::Ref<const Eigen::VectorXd>& f, double s) {
  const Eigen::VectorXd g = s * f;
  const double top = g.maxCoeff();
  return top + std::log(chain.pi().dot((g.array() - top).exp().matrix()));
}

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> out(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i)
    out[static_cast<std::size_t>(i)] = lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1));
  return out;
}

void require_growth_params(const GrowthFunction& growth) {
  if (const auto* l = std::get_if<LogGrowth>(&growth); l && !(l->n > 0.0 && l->kappa > 0.0))
    throw Error(ErrorKind::BadParams, "log growth needs n > 0 and kappa > 0");
  if (const auto* p = std::get_if<PowerIntegral>(&growth);
      p && !(p->n > 0.0 && p->kappa > 0.0 && p->delta >= 1.0))
    throw Error(ErrorKind::BadParams, "power growth needs n > 0, kappa > 0, delta >= 1");
}

}  // namespace

void InequalityReport::record(double slack, double scale, const Eigen::Ref<const Eigen::VectorXd>& input) {
  slacks.push_back(slack);
  worst_slack = std::min(worst_slack, slack);
  if (slack < -tolerance * (1.0 + std::abs(scale)) || std::isnan(slack)) {
    if (pass) witness = input;
    pass = false;
  }
}

void InequalityReport::merge(const InequalityReport& other) {
  slacks.insert(slacks.end(), other.slacks.begin(), other.slacks.end());
  worst_slack = std::min(worst_slack, other.worst_slack);
  quad_error = std::max(quad_error, other.quad_error);
  if (!other.pass && pass) {
    pass = false;
    witness = other.witness;
  }
  for (const auto& [k, v] : other.params) params.emplace(k, v);
}

InequalityReport ei_check(const MarkovChain& chain, const Eigen::Ref<const Eigen::VectorXd>& f,
                          const GrowthFunction& growth) {
  require_growth_params(growth);
  InequalityReport report;
  report.kind = "entropy-information";
  const double mass = integrate_pi(chain, f);
  const double ent = entropy(chain, f);
  const double info = fisher_information(chain, f);
  report.params = {{"mass", mass}, {"entropy", ent}, {"fisher", info}};

  const double plain = mass * phi(growth, info / mass);
  report.record(plain - ent, plain + ent, f);

  // Φ concave: Φ(I) ≤ Φ'(r) I + Θ(r) for every r > 0, with equality at r = I
  std::vector<double> radii = log_grid(1e-4, 1e4, 41);
  if (info > 0.0) radii.push_back(info / mass);
  for (double r : radii) {
    const double rhs = phi_prime(growth, r) * info + mass * theta(growth, r);
    report.record(rhs - ent, rhs + ent, f);
  }
  return report;
}

double poisson_tilted_tail(double lambda, double k, int cutoff) {
  return boost::math::gamma_p(static_cast<double>(cutoff) + 1.0, lambda * std::exp(k));
}

PoissonSharpness poisson_sharpness(double lambda, double k, int cutoff) {
  const PoissonDensity density = poisson_test_function(lambda, k, cutoff);
  const MarkovChain chain = poisson_chain(lambda, cutoff);
  PoissonSharpness out;
  out.tail_mass = density.tail_mass;
  out.renormalization = density.renormalization;
  out.entropy = entropy(chain, density.f);
  out.fisher = fisher_information(chain, density.f);
  out.ratio = out.entropy / out.fisher;
  const double ek = std::exp(k);
  out.entropy_closed = lambda * (k * ek - ek + 1.0);
  out.fisher_closed = lambda * k * std::expm1(k);
  out.ratio_closed = out.entropy_closed / out.fisher_closed;
  return out;
}

UltraParams ultracontractivity_params(const GrowthFunction& growth, double p, double q, double uc_rho) {
  require_growth_params(growth);
  if (!(p >= 1.0) || !std::isfinite(p) || !(q >= p))
    throw Error(ErrorKind::BadParams, "exponents must satisfy 1 <= p <= q with p finite");
  if (!(uc_rho > 0.0)) throw Error(ErrorKind::BadParams, "rho must be positive");
  const bool infinite_q = std::isinf(q);

  if (const auto* l = std::get_if<LogGrowth>(&growth); l && p == 1.0 && infinite_q) {
    const double kn = l->kappa * l->n;
    return {std::log1p(kn / uc_rho) / (2.0 * l->kappa), phi(growth, uc_rho), 0.0};
  }
  const auto integrand = [&](double r) { return phi_prime(growth, uc_rho * r) / r; };
  if (infinite_q && (std::holds_alternative<Linear>(growth) || !tail_converges(integrand)))
    throw Error(ErrorKind::NonIntegrableTail, "Phi'(r)/r is not integrable at infinity");

  UltraParams out;
  const QuadResult t = integrate(integrand, p, q);
  out.t = t.value;
  out.quad_error = t.error;
  // Φ(ϱq)/q → 0 as q → ∞ for the sublinear families
  out.m = phi(growth, uc_rho * p) / p - (infinite_q ? 0.0 : phi(growth, uc_rho * q) / q);
  return out;
}

double ultracontractivity_log_bound(const GrowthFunction& growth, double t) {
  require_growth_params(growth);
  if (!(t > 0.0)) throw Error(ErrorKind::BadParams, "time must be positive");
  if (const auto* l = std::get_if<LogGrowth>(&growth))
    return 0.5 * l->n * std::log1p(1.0 / (2.0 * l->kappa * t));
  if (const auto* p = std::get_if<PowerIntegral>(&growth)) {
    // t(ϱ) ≤ n/(2δϱ^δ), so the ϱ with t(ϱ) = t is at most (n/(2δt))^{1/δ}
    return phi(growth, std::pow(p->n / (2.0 * p->delta * t), 1.0 / p->delta));
  }
  throw Error(ErrorKind::NonIntegrableTail, "a linear growth function gives no ultracontractive bound");
}

InequalityReport ultracontractivity_check(const MarkovChain& chain,
                                          const Eigen::Ref<const Eigen::VectorXd>& f,
                                          const GrowthFunction& growth, double t) {
  InequalityReport report;
  report.kind = "ultracontractivity";
  const double bound = ultracontractivity_log_bound(growth, t);
  const StateFunction evolved = evolve(chain, f, t);
  const double lhs = evolved.maxCoeff();
  const double rhs = bound + log_exp_moment(chain, f, 1.0);
  report.params = {{"t", t}, {"log_bound", bound}};
  report.record(rhs - lhs, std::abs(lhs) + std::abs(rhs), f);
  return report;
}

InequalityReport ultracontractivity_check(const MarkovChain& chain,
                                          const Eigen::Ref<const Eigen::VectorXd>& f,
                                          const GrowthFunction& growth, double p, double q,
                                          double uc_rho) {
  InequalityReport report;
  report.kind = "ultracontractivity";
  const UltraParams params = ultracontractivity_params(growth, p, q, uc_rho);
  const StateFunction evolved = evolve(chain, f, params.t);
  const double lhs = std::isinf(q) ? evolved.maxCoeff() : log_exp_moment(chain, evolved, q) / q;
  const double rhs = log_exp_moment(chain, f, p) / p + params.m;
  report.params = {{"p", p}, {"q", q}, {"uc_rho", uc_rho}, {"t", params.t}, {"m", params.m}};
  report.quad_error = params.quad_error;
  report.record(rhs - lhs, std::abs(lhs) + std::abs(rhs), f);
  return report;
}

double lipschitz_seminorm(const MarkovChain& chain, const Eigen::Ref<const Eigen::VectorXd>& f) {
  return std::sqrt(std::max(0.0, gamma_op(chain, f).maxCoeff()));
}

InequalityReport fisher_lipschitz_check(const MarkovChain& chain,
                                        const Eigen::Ref<const Eigen::VectorXd>& f,
                                        const std::vector<double>& s_grid) {
  InequalityReport report;
  report.kind = "fisher-lipschitz";
  const double c = lipschitz_seminorm(chain, f);
  report.params = {{"lipschitz", c}};
  for (double s : s_grid) {
    const StateFunction g = (s * f).array().exp().matrix();
    const double lhs = fisher_information(chain, g);
    const double rhs = c * c * s * s * integrate_pi(chain, g);
    report.record(rhs - lhs, rhs + lhs, f);
  }
  return report;
}

QuadResult mean_deviation_quadrature(const GrowthFunction& growth, double upper) {
  require_growth_params(growth);
  if (!(upper >= 0.0)) throw Error(ErrorKind::BadParams, "upper limit must be nonnegative");
  const auto integrand = [&growth](double s) { return phi(growth, s * s) / (s * s); };
  if (std::isinf(upper) && !tail_converges(integrand))
    throw Error(ErrorKind::NonIntegrableGrowth, "Phi(s^2)/s^2 is not integrable at infinity");
  const double split = std::min(1.0, upper);
  QuadResult head = integrate(integrand, 0.0, split);
  if (upper > split) {
    // s = split·e^u turns the log-like tail into an exponentially decaying one
    const auto stretched = [&growth, split](double u) {
      const double s = split * std::exp(u);
      return s > 1e150 ? 0.0 : phi(growth, s * s) / s;
    };
    const QuadResult tail = integrate(stretched, 0.0, std::log(upper / split));
    head.value += tail.value;
    head.error += tail.error;
  }
  return head;
}

double mean_deviation_integral(const GrowthFunction& growth, double upper) {
  require_growth_params(growth);
  if (!(upper >= 0.0)) throw Error(ErrorKind::BadParams, "upper limit must be nonnegative");
  if (upper == 0.0) return 0.0;
  if (const auto* l = std::get_if<LogGrowth>(&growth)) {
    // antiderivative of (n/2) log(1 + s²/a)/s², a = κn
    const double a = l->kappa * l->n;
    const double root = std::sqrt(a);
    if (std::isinf(upper)) return 0.5 * l->n * std::numbers::pi / root;
    return 0.5 * l->n * (2.0 / root * std::atan(upper / root) - std::log1p(upper * upper / a) / upper);
  }
  if (const auto* lin = std::get_if<Linear>(&growth)) {
    if (std::isinf(upper))
      throw Error(ErrorKind::NonIntegrableGrowth, "a linear growth function has a divergent tail");
    return lin->c * upper;
  }
  return mean_deviation_quadrature(growth, upper).value;
}

double diameter_bound(const GrowthFunction& growth) {
  return 2.0 * mean_deviation_integral(growth, kInf);
}

InequalityReport exp_integrability_check(const MarkovChain& chain,
                                         const Eigen::Ref<const Eigen::VectorXd>& f,
                                         const GrowthFunction& growth, const std::vector<double>& t_grid) {
  const double lip = lipschitz_seminorm(chain, f);
  if (lip > 1.0 + 1e-9) throw Error(ErrorKind::InvalidInput, "f must be 1-Lipschitz");
  InequalityReport report;
  report.kind = "exp-integrability";
  const double mean = integrate_pi(chain, f);
  report.params = {{"lipschitz", lip}, {"mean", mean}};
  for (double t : t_grid) {
    if (t == 0.0) continue;
    const double lhs = log_exp_moment(chain, f, t);
    const double rhs = std::abs(t) * mean_deviation_integral(growth, std::abs(t)) + t * mean;
    report.record(rhs - lhs, std::abs(lhs) + std::abs(rhs), f);
  }
  try {
    const double bound = mean_deviation_integral(growth, kInf);
    const double deviation = (f.array() - mean).abs().maxCoeff();
    report.params["mean_deviation_bound"] = bound;
    report.params["mean_deviation"] = deviation;
    report.record(bound - deviation, bound + deviation, f);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NonIntegrableGrowth) throw;
    report.params["mean_deviation_bound"] = kInf;
  }
  return report;
}

InequalityReport nash_check(const MarkovChain& chain, const Eigen::Ref<const Eigen::VectorXd>& f,
                            double alpha, double beta, double A) {
  if (!(A >= 1.0) || !(alpha > 0.0) || !(beta > 0.0))
    throw Error(ErrorKind::BadParams, "Nash parameters need A >= 1 and alpha, beta > 0");
  if ((f.array() == 0.0).any()) throw Error(ErrorKind::VanishingEntry, "f vanishes somewhere");
  InequalityReport report;
  report.kind = "nash";
  report.params = {{"alpha", alpha}, {"beta", beta}, {"A", A}};
  const double l2sq = chain.pi().dot(f.cwiseAbs2());
  const double l1 = chain.pi().dot(f.cwiseAbs());
  const StateFunction squared = f.cwiseAbs2();
  const double lhs = (alpha + 1.0) * std::log(l2sq);
  const double rhs = alpha * std::log(A * l2sq + fisher_information(chain, squared) / beta) + 2.0 * std::log(l1);
  report.record(rhs - lhs, std::abs(lhs) + std::abs(rhs), f);
  return report;
}

NormDerivativeCheck norm_derivative_identity(const MarkovChain& chain,
                                             const Eigen::Ref<const Eigen::VectorXd>& f, double t,
                                             double q, double q_prime, double h) {
  if (!(q >= 1.0) || !(t > h) || !(h > 0.0))
    throw Error(ErrorKind::BadParams, "need q >= 1 and t > h > 0");
  const HeatSemigroup semigroup(chain);
  const auto norm = [&](double s) {
    const double qs = q + q_prime * (s - t);
    return std::exp(log_exp_moment(chain, semigroup.evolve(f, s), qs) / qs);
  };
  NormDerivativeCheck out;
  const double derivative = (norm(t + h) - norm(t - h)) / (2.0 * h);
  out.lhs = q * std::pow(norm(t), q - 1.0) * derivative;
  const StateFunction g = (q * semigroup.evolve(f, t)).array().exp().matrix();
  out.rhs = q_prime / q * entropy(chain, g) - fisher_information(chain, g);
  out.relative_error = std::abs(out.lhs - out.rhs) / (1.0 + std::abs(out.rhs));
  return out;
}

PartialSumsProbe partial_sums_probe(const MarkovChain& chain) {
  const std::size_t n = chain.size();
  for (std::size_t x = 0; x < n; ++x) {
    if (chain.label(x) != std::to_string(x))
      throw Error(ErrorKind::InvalidInput, "expected a birth-death chain labelled 0..N");
    for (const auto& t : chain.neighbors(x))
      if (t.to + 1 != x && t.to != x + 1) throw Error(ErrorKind::InvalidInput, "not a birth-death chain");
  }
  PartialSumsProbe probe;
  const auto size = static_cast<Eigen::Index>(n);
  probe.f = StateFunction::Zero(size);
  for (std::size_t x = 1; x < n; ++x)
    probe.f(static_cast<Eigen::Index>(x)) = probe.f(static_cast<Eigen::Index>(x - 1)) + 1.0 / std::sqrt(chain.rate(x, x - 1));
  probe.two_gamma = 2.0 * gamma_op(chain, probe.f);
  probe.two_gamma_closed = StateFunction::Zero(size);
  for (std::size_t x = 0; x < n; ++x) {
    double value = 0.0;
    if (x + 1 < n) value += chain.rate(x, x + 1) / chain.rate(x + 1, x);
    if (x > 0) value += 1.0;
    probe.two_gamma_closed(static_cast<Eigen::Index>(x)) = value;
  }
  probe.lipschitz = lipschitz_seminorm(chain, probe.f);
  probe.range = probe.f(size - 1) - probe.f(0);
  return probe;
}

InequalityReport finite_entropy_bound_check(const MarkovChain& chain,
                                            const Eigen::Ref<const Eigen::VectorXd>& f,
                                            const GrowthFunction& growth) {
  InequalityReport report;
  report.kind = "finite-entropy-bound";
  const double limit = phi_limit(growth);
  report.params = {{"phi_limit", limit}};
  const double ent = entropy(chain, f);
  if (std::isinf(limit)) {
    report.record(kInf, 0.0, f);
    return report;
  }
  const double rhs = limit * integrate_pi(chain, f);
  report.record(rhs - ent, rhs + ent, f);
  return report;
}

}  // namespace curvcheck
