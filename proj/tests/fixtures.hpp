#pragma once

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "curvcheck/chain.hpp"
#include "curvcheck/example_chains.hpp"

namespace curvcheck::testing {

inline Eigen::VectorXd vec(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

inline Eigen::VectorXd gaussian(std::mt19937_64& rng, std::size_t n, double scale = 1.0) {
  std::normal_distribution<double> dist(0.0, scale);
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = dist(rng);
  return v;
}

/// Entries in [lo, hi], log-uniform.
inline Eigen::VectorXd positive(std::mt19937_64& rng, std::size_t n, double lo = 0.05, double hi = 20.0) {
  std::uniform_real_distribution<double> dist(std::log(lo), std::log(hi));
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = std::exp(dist(rng));
  return v;
}

/// Positive f normalized to ∫ f dμ = 1.
inline Eigen::VectorXd density(std::mt19937_64& rng, const MarkovChain& chain) {
  Eigen::VectorXd f = positive(rng, chain.size(), 0.2, 5.0);
  return f / chain.pi().dot(f);
}

struct Fixture {
  const char* name;
  MarkovChain chain;
};

/// The operator fixtures: two-point, K5, Q3, path-5, truncated Poisson N=30.
inline std::vector<Fixture> operator_fixtures() {
  return {
      {"two_point", two_point_chain(1.0, 2.0)},
      {"K5", complete_chain(5)},
      {"Q3", hypercube_chain(3)},
      {"path5", path_chain(5)},
      {"poisson30", poisson_chain(1.0, 30)},
  };
}

}  // namespace curvcheck::testing
