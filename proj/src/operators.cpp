#include "curvcheck/operators.hpp"

#include <cmath>
#include <limits>

#include "curvcheck/error.hpp"

namespace curvcheck {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

using ConstRef = Eigen::Ref<const Eigen::VectorXd>;

template <typename H>
double psi_at_with(const MarkovChain& chain, const ConstRef& f, std::size_t x, H&& h) {
  double sum = 0.0;
  const double fx = f(static_cast<Eigen::Index>(x));
  for (const auto& t : chain.neighbors(x)) sum += t.rate * h(f(static_cast<Eigen::Index>(t.to)) - fx);
  return sum;
}

template <typename H>
double psi2_at_with(const MarkovChain& chain, const ConstRef& f, std::size_t x, H&& h,
                    const ScalarKernel& kernel) {
  const double psi_x = psi_at_with(chain, f, x, h);
  const double lf_x = generator_at(chain, f, x);
  const double fx = f(static_cast<Eigen::Index>(x));
  double l_psi = 0.0;
  double b = 0.0;
  for (const auto& t : chain.neighbors(x)) {
    const double psi_y = psi_at_with(chain, f, t.to, h);
    const double lf_y = generator_at(chain, f, t.to);
    l_psi += t.rate * (psi_y - psi_x);
    b += t.rate * kernel_derivative(kernel, f(static_cast<Eigen::Index>(t.to)) - fx) * (lf_y - lf_x);
  }
  return 0.5 * (l_psi - b);
}

}  // namespace

double kernel_value(const ScalarKernel& kernel, double r) {
  return std::visit(Overloaded{
                        [r](const UpsilonKernel&) { return upsilon(r); },
                        [r](const SquareKernel&) { return r * r; },
                        [r](const NuKernel& k) { return k.out_scale * nu(k.c, k.d, r / k.arg_scale); },
                        [r](const CustomKernel& k) { return k.value(r); },
                    },
                    kernel);
}

double kernel_derivative(const ScalarKernel& kernel, double r) {
  return std::visit(
      Overloaded{
          [r](const UpsilonKernel&) { return upsilon_prime(r); },
          [r](const SquareKernel&) { return 2.0 * r; },
          [r](const NuKernel& k) { return k.out_scale / k.arg_scale * nu_prime(k.c, k.d, r / k.arg_scale); },
          [r](const CustomKernel& k) {
            if (!k.derivative) throw Error(ErrorKind::InvalidInput, "kernel '" + k.name + "' has no derivative");
            return k.derivative(r);
          },
      },
      kernel);
}

std::string kernel_name(const ScalarKernel& kernel) {
  return std::visit(Overloaded{
                        [](const UpsilonKernel&) { return std::string("upsilon"); },
                        [](const SquareKernel&) { return std::string("square"); },
                        [](const NuKernel&) { return std::string("nu"); },
                        [](const CustomKernel& k) { return k.name; },
                    },
                    kernel);
}

ConvexityScan convexity_scan(double c, double d, double lo, double hi, int points) {
  ConvexityScan scan{std::numeric_limits<double>::infinity(), lo};
  for (int i = 0; i < points; ++i) {
    const double r = lo + (hi - lo) * i / (points - 1);
    const double v = nu_second(c, d, r);
    if (v < scan.min_second_derivative) scan = {v, r};
  }
  return scan;
}

double generator_at(const MarkovChain& chain, const ConstRef& f, std::size_t x) {
  double sum = 0.0;
  const double fx = f(static_cast<Eigen::Index>(x));
  for (const auto& t : chain.neighbors(x)) sum += t.rate * (f(static_cast<Eigen::Index>(t.to)) - fx);
  return sum;
}

StateFunction generator_apply(const MarkovChain& chain, const ConstRef& f) {
  StateFunction out(f.size());
  for (std::size_t x = 0; x < chain.size(); ++x) out(static_cast<Eigen::Index>(x)) = generator_at(chain, f, x);
  return out;
}

double psi_at(const MarkovChain& chain, const ConstRef& f, const ScalarKernel& kernel, std::size_t x) {
  return psi_at_with(chain, f, x, [&kernel](double r) { return kernel_value(kernel, r); });
}

StateFunction psi(const MarkovChain& chain, const ConstRef& f, const ScalarKernel& kernel) {
  StateFunction out(f.size());
  for (std::size_t x = 0; x < chain.size(); ++x) out(static_cast<Eigen::Index>(x)) = psi_at(chain, f, kernel, x);
  return out;
}

StateFunction b_operator(const MarkovChain& chain, const ConstRef& f, const ConstRef& g,
                         const ScalarKernel& kernel) {
  StateFunction out = StateFunction::Zero(f.size());
  for (std::size_t x = 0; x < chain.size(); ++x) {
    const auto xi = static_cast<Eigen::Index>(x);
    for (const auto& t : chain.neighbors(x)) {
      const auto y = static_cast<Eigen::Index>(t.to);
      out(xi) += t.rate * kernel_value(kernel, f(y) - f(xi)) * (g(y) - g(xi));
    }
  }
  return out;
}

double psi2_at(const MarkovChain& chain, const ConstRef& f, const ScalarKernel& kernel, std::size_t x) {
  if (std::holds_alternative<UpsilonKernel>(kernel))
    return psi2_at_with(chain, f, x, [](double r) { return upsilon(r); }, kernel);
  return psi2_at_with(chain, f, x, [&kernel](double r) { return kernel_value(kernel, r); }, kernel);
}

StateFunction psi2(const MarkovChain& chain, const ConstRef& f, const ScalarKernel& kernel) {
  // whole-vector form: one pass for Ψ_H and Lf, then the outer sums
  const StateFunction psi_f = psi(chain, f, kernel);
  const StateFunction lf = generator_apply(chain, f);
  StateFunction out(f.size());
  for (std::size_t x = 0; x < chain.size(); ++x) {
    const auto xi = static_cast<Eigen::Index>(x);
    double l_psi = 0.0;
    double b = 0.0;
    for (const auto& t : chain.neighbors(x)) {
      const auto y = static_cast<Eigen::Index>(t.to);
      l_psi += t.rate * (psi_f(y) - psi_f(xi));
      b += t.rate * kernel_derivative(kernel, f(y) - f(xi)) * (lf(y) - lf(xi));
    }
    out(xi) = 0.5 * (l_psi - b);
  }
  return out;
}

double psi2_upsilon_rep_at(const MarkovChain& chain, const ConstRef& f, std::size_t x) {
  const auto xi = static_cast<Eigen::Index>(x);
  const double fx = f(xi);
  double lf_x = 0.0;
  double psi_x = 0.0;
  double m1 = 0.0;
  for (const auto& t : chain.neighbors(x)) {
    const double diff = f(static_cast<Eigen::Index>(t.to)) - fx;
    lf_x += t.rate * diff;
    psi_x += t.rate * upsilon(diff);
    m1 += t.rate;
  }
  double first = 0.0;
  double second = 0.0;
  for (const auto& t : chain.neighbors(x)) {
    const double fy = f(static_cast<Eigen::Index>(t.to));
    const double slope = upsilon_prime(fy - fx);
    double inner = 0.0;
    for (const auto& u : chain.neighbors(t.to)) {
      const double step = f(static_cast<Eigen::Index>(u.to)) - fy;
      inner += u.rate * (upsilon(step) - slope * step);
    }
    first += t.rate * inner;
    second += t.rate * slope * lf_x;
  }
  const double third = m1 * psi_x;
  return 0.5 * (first + second - third);
}

StateFunction psi2_upsilon_rep(const MarkovChain& chain, const ConstRef& f) {
  StateFunction out(f.size());
  for (std::size_t x = 0; x < chain.size(); ++x)
    out(static_cast<Eigen::Index>(x)) = psi2_upsilon_rep_at(chain, f, x);
  return out;
}

StateFunction gamma_op(const MarkovChain& chain, const ConstRef& f) {
  return 0.5 * psi(chain, f, SquareKernel{});
}

StateFunction gamma2_op(const MarkovChain& chain, const ConstRef& f) {
  return 0.5 * psi2(chain, f, SquareKernel{});
}

StateFunction chain_rule_residual(const MarkovChain& chain, const ConstRef& f) {
  if ((f.array() <= 0.0).any())
    throw Error(ErrorKind::NonPositiveInput, "chain rule identity needs strictly positive f");
  const StateFunction log_f = f.unaryExpr([](double v) { return std::log(v); });
  const StateFunction lf = generator_apply(chain, f);
  return generator_apply(chain, log_f) - lf.cwiseQuotient(f) + psi(chain, log_f, UpsilonKernel{});
}

}  // namespace curvcheck
