#include "curvcheck/growth.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/tools/roots.hpp>

#include "curvcheck/error.hpp"
#include "curvcheck/quadrature.hpp"
#include "descriptor.hpp"

namespace curvcheck {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// ∫_a^∞ v^{δ-2}/(v^δ+1) dv in the variable u = log v, where the integrand
// e^{u(δ-1)}/(e^{uδ}+1) is smooth and decays on both sides for δ > 1.
double power_tail(double delta, double a) {
  const auto integrand = [delta](double u) {
    if (u > 0.0) {
      const double w = std::exp(-u * delta);
      return std::exp(-u) / (1.0 + w);
    }
    return std::exp(u * (delta - 1.0)) / (std::exp(u * delta) + 1.0);
  };
  QuadOptions options;
  options.abs_tol = 1e-13;
  options.rel_tol = 1e-13;
  return integrate(integrand, std::log(a), std::numeric_limits<double>::infinity(), options).value;
}

}  // namespace

double phi_power_quadrature(double n, double kappa, double delta, double r) {
  if (!(r > 0.0)) return 0.0;
  const double root = std::pow(kappa * n, 1.0 / delta);
  return root / (2.0 * kappa) * power_tail(delta, root / r);
}

double phi(const GrowthFunction& g, double r) {
  return std::visit(Overloaded{
                        [r](const LogGrowth& l) { return 0.5 * l.n * std::log1p(r / (l.kappa * l.n)); },
                        [r](const PowerIntegral& p) { return phi_power_quadrature(p.n, p.kappa, p.delta, r); },
                        [r](const Linear& l) { return l.c * r; },
                    },
                    g);
}

double phi_prime(const GrowthFunction& g, double r) {
  return std::visit(Overloaded{
                        [r](const LogGrowth& l) { return l.n / (2.0 * (l.kappa * l.n + r)); },
                        [r](const PowerIntegral& p) {
                          return p.n / (2.0 * (p.kappa * p.n + std::pow(r, p.delta)));
                        },
                        [](const Linear& l) { return l.c; },
                    },
                    g);
}

double phi_second(const GrowthFunction& g, double r) {
  return std::visit(Overloaded{
                        [r](const LogGrowth& l) {
                          const double s = l.kappa * l.n + r;
                          return -l.n / (2.0 * s * s);
                        },
                        [r](const PowerIntegral& p) {
                          const double s = p.kappa * p.n + std::pow(r, p.delta);
                          return -p.n * p.delta * std::pow(r, p.delta - 1.0) / (2.0 * s * s);
                        },
                        [](const Linear&) { return 0.0; },
                    },
                    g);
}

double theta(const GrowthFunction& g, double r) { return phi(g, r) - phi_prime(g, r) * r; }

bool is_bounded(const GrowthFunction& g) {
  const auto* p = std::get_if<PowerIntegral>(&g);
  return p != nullptr && p->delta > 1.0;
}

double phi_limit(const GrowthFunction& g) {
  if (!is_bounded(g)) return std::numeric_limits<double>::infinity();
  const auto& p = std::get<PowerIntegral>(g);
  const double root = std::pow(p.kappa * p.n, 1.0 / p.delta);
  const double pi = std::numbers::pi;
  return root / (2.0 * p.kappa) * (pi / p.delta) / std::sin(pi * (p.delta - 1.0) / p.delta);
}

GrowthFunction growth_from_power_cd(double n, double kappa, double delta) {
  if (!(n > 0.0) || !(kappa > 0.0) || !(delta >= 1.0))
    throw Error(ErrorKind::BadParams, "growth function needs n > 0, kappa > 0, delta >= 1");
  if (delta == 1.0) return LogGrowth{n, kappa};
  return PowerIntegral{n, kappa, delta};
}

GrowthFunction parse_growth(const std::string& descriptor) {
  const Descriptor d = parse_descriptor(descriptor);
  if (d.head == "log") {
    const GrowthFunction g = growth_from_power_cd(d.number("n"), d.number("kappa"), 1.0);
    return g;
  }
  if (d.head == "power") return growth_from_power_cd(d.number("n"), d.number("kappa"), d.number_or("delta", 2.0));
  if (d.head == "linear") {
    const double c = d.number("c");
    if (!(c > 0.0)) throw Error(ErrorKind::BadParams, "linear growth needs c > 0");
    return Linear{c};
  }
  throw Error(ErrorKind::InvalidInput, "unknown growth function '" + d.head + "'");
}

std::string describe(const GrowthFunction& g) {
  std::ostringstream out;
  out.precision(17);
  std::visit(Overloaded{
                 [&out](const LogGrowth& l) { out << "log:n=" << l.n << ",kappa=" << l.kappa; },
                 [&out](const PowerIntegral& p) {
                   out << "power:n=" << p.n << ",kappa=" << p.kappa << ",delta=" << p.delta;
                 },
                 [&out](const Linear& l) { out << "linear:c=" << l.c; },
             },
             g);
  return out.str();
}

double inverse_ratio(const CDFunction& F, double y) {
  if (!(y > 0.0)) return 0.0;
  const auto excess = [&F, y](double r) { return cd_value(F, r) / r - y; };
  double lo = 1.0;
  double hi = 1.0;
  for (int i = 0; excess(hi) < 0.0; ++i) {
    if (i > 2000) throw Error(ErrorKind::BadParams, "F(r)/r does not reach the target");
    lo = hi;
    hi *= 2.0;
  }
  for (int i = 0; excess(lo) > 0.0; ++i) {
    // F(lo) near underflow: F superlinear puts G(y) ≤ lo far below any quadrature weight
    if (lo < 1e-150 || cd_value(F, lo) < 1e-280) return 0.0;
    hi = lo;
    lo *= 0.5;
  }
  const auto bracket = boost::math::tools::bisect(
      excess, lo, hi, [](double a, double b) { return std::abs(b - a) <= 1e-12 * std::abs(b); });
  return 0.5 * (bracket.first + bracket.second);
}

double main_entropy_bound(double fisher, double kappa, const CDFunction& F, double delta) {
  if (!(fisher > 0.0) || !(kappa > 0.0) || !(delta > 0.0))
    throw Error(ErrorKind::BadParams, "entropy bound needs I > 0, kappa > 0, delta > 0");
  const double fi = cd_value(F, fisher);
  if (!(fi > 0.0)) throw Error(ErrorKind::BadParams, "F(I) must be positive");
  const double q = kappa * fisher / fi;
  const auto integrand = [&](double t) {
    // e^{x}(1+q) - 1 written as expm1(x)(1+q) + q
    const double denom = std::expm1(2.0 * delta * kappa * t) * (1.0 + q) + q;
    if (!std::isfinite(denom)) return 0.0;
    return inverse_ratio(F, kappa / denom);
  };
  if (!tail_converges(integrand))
    throw Error(ErrorKind::DivergentIntegral, "the time integral does not converge");
  return integrate(integrand, 0.0, std::numeric_limits<double>::infinity()).value;
}

}  // namespace curvcheck
