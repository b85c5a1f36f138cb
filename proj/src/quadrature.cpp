#include "curvcheck/quadrature.hpp"

#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "curvcheck/error.hpp"

namespace curvcheck {

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadOptions& options) {
  using boost::math::quadrature::gauss_kronrod;
  QuadResult result;
  double l1 = 0.0;
  result.value = gauss_kronrod<double, 61>::integrate(f, a, b, options.max_depth, options.rel_tol,
                                                      &result.error, &l1);
  if (!std::isfinite(result.value))
    throw Error(ErrorKind::QuadratureNonConvergent, "integrand produced a non-finite value");
  if (result.error > std::max(options.abs_tol, options.rel_tol * l1) &&
      result.error > options.abs_tol * std::max(1.0, std::abs(result.value)))
    throw Error(ErrorKind::QuadratureNonConvergent,
                "error estimate " + std::to_string(result.error) + " on value " + std::to_string(result.value));
  return result;
}

bool tail_converges(const std::function<double(double)>& f, double tol) {
  using boost::math::quadrature::gauss_kronrod;
  const auto abs_f = [&f](double x) { return std::abs(f(x)); };
  double previous = std::numeric_limits<double>::infinity();
  double last = 0.0;
  for (int k = 10; k <= 60; k += 10) {
    const double T = std::ldexp(1.0, k);
    last = gauss_kronrod<double, 61>::integrate(abs_f, T, 2.0 * T, 10, 1e-10);
    if (!std::isfinite(last) || last > previous) return false;
    previous = last;
  }
  return last < tol;
}

}  // namespace curvcheck
