#pragma once

#include <cmath>

namespace curvcheck {

// Υ(r) = e^r - r - 1 and the ν_{c,d} family built from it. Templated on the
// scalar so the same kernels serve double and long double checks.

/// e^r - r - 1. Uses the Taylor series for |r| < 1e-2 and expm1 elsewhere, so
/// the result keeps full relative precision near the double zero at 0.
template <typename Scalar>
Scalar upsilon(Scalar r) {
  using std::abs;
  using std::expm1;
  if (abs(r) < Scalar(1e-2)) {
    // r^2/2 + r^3/6 + ... + r^9/9!
    Scalar term = r * r / Scalar(2);
    Scalar sum = term;
    for (int k = 3; k <= 9; ++k) {
      term *= r / Scalar(k);
      sum += term;
    }
    return sum;
  }
  return expm1(r) - r;
}

template <typename Scalar>
Scalar upsilon_prime(Scalar r) {
  using std::expm1;
  return expm1(r);
}

template <typename Scalar>
Scalar upsilon_second(Scalar r) {
  using std::exp;
  return exp(r);
}

/// ν_{c,d}(r) = c Υ'(r) r + Υ(-r) - d Υ(r).
template <typename Scalar>
Scalar nu(Scalar c, Scalar d, Scalar r) {
  return c * upsilon_prime(r) * r + upsilon(-r) - d * upsilon(r);
}

template <typename Scalar>
Scalar nu_prime(Scalar c, Scalar d, Scalar r) {
  using std::exp;
  using std::expm1;
  return c * (r * exp(r) + expm1(r)) - expm1(-r) - d * expm1(r);
}

/// ν''_{c,d}(r) = c e^r (r + 2) + e^{-r} - d e^r.
template <typename Scalar>
Scalar nu_second(Scalar c, Scalar d, Scalar r) {
  using std::exp;
  return c * exp(r) * (r + Scalar(2)) + exp(-r) - d * exp(r);
}

}  // namespace curvcheck
