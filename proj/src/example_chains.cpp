#include "curvcheck/example_chains.hpp"

#include <cmath>
#include <numeric>

#include "curvcheck/error.hpp"
#include "curvcheck/inequalities.hpp"

namespace curvcheck {
namespace {

std::vector<std::string> index_labels(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return labels;
}

int integer_param(const ExampleParams& params, const std::string& key, double fallback, int minimum) {
  const double v = params.get(key, fallback);
  if (v != std::floor(v) || v < minimum || v > 1e6)
    throw Error(ErrorKind::BadParams, key + " must be an integer >= " + std::to_string(minimum));
  return static_cast<int>(v);
}

}  // namespace

double ExampleParams::get(const std::string& key, double fallback) const {
  const auto it = values.find(key);
  return it == values.end() ? fallback : it->second;
}

MarkovChain two_point_chain(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw Error(ErrorKind::BadParams, "two_point needs a, b > 0");
  Eigen::Matrix2d rates;
  rates << 0.0, a, b, 0.0;
  return MarkovChain({"0", "1"}, rates);
}

MarkovChain complete_chain(int n) {
  if (n < 2) throw Error(ErrorKind::BadParams, "complete needs n >= 2");
  return weighted_complete_chain(std::vector<double>(static_cast<std::size_t>(n), 1.0));
}

MarkovChain weighted_complete_chain(const std::vector<double>& l) {
  if (l.size() < 2) throw Error(ErrorKind::BadParams, "weighted_complete needs at least two weights");
  for (double w : l)
    if (!(w > 0.0) || !std::isfinite(w)) throw Error(ErrorKind::BadParams, "weights must be positive");
  const auto n = static_cast<Eigen::Index>(l.size());
  Eigen::MatrixXd rates(n, n);
  for (Eigen::Index x = 0; x < n; ++x)
    for (Eigen::Index y = 0; y < n; ++y) rates(x, y) = x == y ? 0.0 : l[static_cast<std::size_t>(y)];
  return MarkovChain(index_labels(l.size()), rates);
}

MarkovChain hypercube_chain(int d) {
  if (d < 1 || d > 14) throw Error(ErrorKind::BadParams, "hypercube needs 1 <= d <= 14");
  const Eigen::Index n = Eigen::Index{1} << d;
  Eigen::MatrixXd rates = Eigen::MatrixXd::Zero(n, n);
  std::vector<std::string> labels;
  for (Eigen::Index x = 0; x < n; ++x) {
    std::string label;
    for (int bit = d - 1; bit >= 0; --bit) label.push_back(((x >> bit) & 1) ? '1' : '0');
    labels.push_back(label);
    for (int bit = 0; bit < d; ++bit) rates(x, x ^ (Eigen::Index{1} << bit)) = 1.0;
  }
  return MarkovChain(std::move(labels), rates);
}

MarkovChain poisson_chain(double lambda, int cutoff) {
  if (!(lambda > 0.0)) throw Error(ErrorKind::BadParams, "lambda must be positive");
  return truncate_birth_death([lambda](int) { return lambda; }, [](int x) { return static_cast<double>(x); },
                              cutoff);
}

MarkovChain path_chain(int n) {
  if (n < 2) throw Error(ErrorKind::BadParams, "path needs n >= 2");
  Eigen::MatrixXd rates = Eigen::MatrixXd::Zero(n, n);
  for (int x = 0; x + 1 < n; ++x) rates(x, x + 1) = rates(x + 1, x) = 1.0;
  return MarkovChain(index_labels(static_cast<std::size_t>(n)), rates);
}

Example make_example(const std::string& family, const ExampleParams& params) {
  if (family == "two_point") {
    const double a = params.get("a", 1.0);
    const double b = params.get("b", 1.0);
    MarkovChain chain = two_point_chain(a, b);
    const double lambda = std::min(a / b, b / a);
    Certificate cert{0.0, NuBased{a * b / 2.0, 1.0 + lambda, lambda, std::max(a, b)}};
    return {family, params, std::move(chain), cert,
            {"kappa = 0 with the dimension term carrying the full strength",
             "positive curvature: see estimate_kappa_infty"}};
  }
  if (family == "complete") {
    const int n = integer_param(params, "n", 3, 2);
    const double alpha = params.get("alpha", 0.25);
    if (!(alpha > 0.0 && alpha < 0.5)) throw Error(ErrorKind::BadParams, "alpha must lie in (0, 1/2)");
    Certificate cert{std::sqrt(2.0 * n * (1.0 - 2.0 * alpha)), PowerType{n / alpha, 1.0}};
    return {family, params, complete_chain(n), cert, {"dimension n/alpha = " + std::to_string(n / alpha)}};
  }
  if (family == "weighted_complete") {
    const std::vector<double>& l = params.weights;
    MarkovChain chain = weighted_complete_chain(l);
    const double l1 = std::accumulate(l.begin(), l.end(), 0.0);
    const double l_star = *std::min_element(l.begin(), l.end());
    const double alpha = params.get("alpha", l_star / 4.0);
    const double delta = params.get("delta", 1.0);
    if (!(alpha > 0.0 && alpha < l_star / 2.0))
      throw Error(ErrorKind::BadParams, "alpha must lie in (0, min(l)/2)");
    if (!(delta >= 1.0)) throw Error(ErrorKind::BadParams, "delta must be >= 1");
    Certificate cert{std::sqrt(2.0 * l1 * (l_star - 2.0 * alpha)),
                     PowerType{std::pow(l1, delta) / (alpha * c_delta(delta)), delta}};
    return {family, params, std::move(chain), cert, {}};
  }
  if (family == "hypercube") {
    const int d = integer_param(params, "d", 3, 1);
    Certificate cert{2.0, NuBased{d / 2.0, 2.0, 5.0, static_cast<double>(d)}};
    return {family, params, hypercube_chain(d), cert, {"the curvature constant 2 is optimal"}};
  }
  if (family == "birth_death") {
    const double lambda = params.get("lambda", 1.0);
    const int cutoff = integer_param(params, "cutoff", 30, 1);
    return {family,
            params,
            poisson_chain(lambda, cutoff),
            std::nullopt,
            {"truncated chain: results are heuristic",
             "the untruncated Poisson chain admits no finite dimension for any kappa > 0"}};
  }
  if (family == "path") {
    const int n = integer_param(params, "n", 3, 2);
    return {family, params, path_chain(n), std::nullopt, {}};
  }
  throw Error(ErrorKind::InvalidInput, "unknown family '" + family + "'");
}

PoissonDensity poisson_test_function(double lambda, double k, int cutoff) {
  if (!(lambda > 0.0) || !std::isfinite(k)) throw Error(ErrorKind::BadParams, "need lambda > 0 and finite k");
  PoissonDensity out;
  out.tail_mass = poisson_tilted_tail(lambda, k, cutoff);
  if (out.tail_mass > 1e-8)
    throw Error(ErrorKind::TruncationInsufficient,
                "Poisson(" + std::to_string(lambda * std::exp(k)) + ") leaves mass " +
                    std::to_string(out.tail_mass) + " beyond cutoff " + std::to_string(cutoff));
  const MarkovChain chain = poisson_chain(lambda, cutoff);
  const auto n = static_cast<Eigen::Index>(chain.size());
  StateFunction f(n);
  for (Eigen::Index x = 0; x < n; ++x) f(x) = std::exp(k * static_cast<double>(x) - lambda * std::expm1(k));
  out.renormalization = chain.pi().dot(f);
  out.f = f / out.renormalization;
  return out;
}

EtaMaps hypercube_eta_maps(int d) {
  const MarkovChain chain = hypercube_chain(d);
  EtaMaps eta(chain.size());
  for (std::size_t x = 0; x < chain.size(); ++x) {
    const auto ball1 = ball(chain, x, 1);
    for (int i = 0; i < d; ++i) {
      std::map<std::size_t, std::size_t> map;
      for (std::size_t u : ball1) map[u] = u ^ (std::size_t{1} << i);
      eta[x].push_back(std::move(map));
    }
  }
  return eta;
}

}  // namespace curvcheck
