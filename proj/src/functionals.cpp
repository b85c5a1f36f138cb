#include "curvcheck/functionals.hpp"

#include <cmath>
#include <limits>

#include "curvcheck/error.hpp"
#include "curvcheck/operators.hpp"

namespace curvcheck {
namespace {

void require_positive(const Eigen::Ref<const Eigen::VectorXd>& f, const char* what) {
  if (!((f.array() > 0.0).all()) || !f.allFinite())
    throw Error(ErrorKind::NonPositiveInput, std::string(what) + " needs a strictly positive finite f");
}

}  // namespace

double integrate_pi(const MarkovChain& chain, const Eigen::Ref<const Eigen::VectorXd>& f) {
  return chain.pi().dot(f);
}

double entropy(const MarkovChain& chain, const Eigen::Ref<const Eigen::VectorXd>& f) {
  require_positive(f, "entropy");
  const double mass = integrate_pi(chain, f);
  // Σ π f log(f / mass) is the same quantity with less cancellation
  double sum = 0.0;
  for (Eigen::Index x = 0; x < f.size(); ++x) sum += chain.pi()(x) * f(x) * std::log(f(x) / mass);
  return std::max(sum, 0.0);
}

double fisher_information(const MarkovChain& chain, const Eigen::Ref<const Eigen::VectorXd>& f) {
  require_positive(f, "Fisher information");
  double sum = 0.0;
  for (std::size_t x = 0; x < chain.size(); ++x) {
    const auto xi = static_cast<Eigen::Index>(x);
    for (const auto& t : chain.neighbors(x)) {
      const auto y = static_cast<Eigen::Index>(t.to);
      sum += t.rate * (f(y) - f(xi)) * std::log(f(y) / f(xi)) * chain.pi()(xi);
    }
  }
  return 0.5 * sum;
}

double fisher_via_psi(const MarkovChain& chain, const Eigen::Ref<const Eigen::VectorXd>& f) {
  require_positive(f, "Fisher information");
  const Eigen::VectorXd log_f = f.unaryExpr([](double v) { return std::log(v); });
  const Eigen::VectorXd psi_log = psi(chain, log_f, UpsilonKernel{});
  return chain.pi().dot(f.cwiseProduct(psi_log));
}

double dirichlet_form(const MarkovChain& chain, const Eigen::Ref<const Eigen::VectorXd>& f,
                      const Eigen::Ref<const Eigen::VectorXd>& g) {
  double sum = 0.0;
  for (std::size_t x = 0; x < chain.size(); ++x) {
    const auto xi = static_cast<Eigen::Index>(x);
    for (const auto& t : chain.neighbors(x)) {
      const auto y = static_cast<Eigen::Index>(t.to);
      sum += t.rate * (f(y) - f(xi)) * (g(y) - g(xi)) * chain.pi()(xi);
    }
  }
  return 0.5 * sum;
}

double lp_norm(const MarkovChain& chain, const Eigen::Ref<const Eigen::VectorXd>& f, double p) {
  if (std::isinf(p)) return f.cwiseAbs().maxCoeff();
  return std::pow(chain.pi().dot(f.cwiseAbs().array().pow(p).matrix()), 1.0 / p);
}

}  // namespace curvcheck
