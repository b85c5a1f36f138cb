#include "curvcheck/chain.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <unordered_map>

#include "curvcheck/error.hpp"

namespace curvcheck {
namespace {

std::vector<int> bfs(const Eigen::MatrixXd& rates, std::size_t source, bool transposed) {
  const auto n = static_cast<std::size_t>(rates.rows());
  std::vector<int> dist(n, -1);
  std::deque<std::size_t> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const std::size_t x = queue.front();
    queue.pop_front();
    for (std::size_t y = 0; y < n; ++y) {
      if (y == x || dist[y] >= 0) continue;
      const double r = transposed ? rates(y, x) : rates(x, y);
      if (r > 0.0) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }
  return dist;
}

// log-domain tree recursion; returns nullopt if some positive rate has no reverse
std::optional<Eigen::VectorXd> tree_measure(const Eigen::MatrixXd& rates) {
  const auto n = static_cast<std::size_t>(rates.rows());
  Eigen::VectorXd log_pi = Eigen::VectorXd::Constant(n, std::numeric_limits<double>::quiet_NaN());
  std::deque<std::size_t> queue{0};
  log_pi(0) = 0.0;
  while (!queue.empty()) {
    const std::size_t x = queue.front();
    queue.pop_front();
    for (std::size_t y = 0; y < n; ++y) {
      if (y == x) continue;
      const double fwd = rates(x, y);
      const double bwd = rates(y, x);
      if ((fwd > 0.0) != (bwd > 0.0)) return std::nullopt;
      if (fwd > 0.0 && std::isnan(log_pi(y))) {
        log_pi(y) = log_pi(x) + std::log(fwd) - std::log(bwd);
        queue.push_back(y);
      }
    }
  }
  if (log_pi.hasNaN()) return std::nullopt;
  const double top = log_pi.maxCoeff();
  Eigen::VectorXd pi = (log_pi.array() - top).exp();
  return pi / pi.sum();
}

bool satisfies_detailed_balance(const Eigen::MatrixXd& rates, const Eigen::VectorXd& pi,
                                double tolerance) {
  const auto n = rates.rows();
  for (Eigen::Index x = 0; x < n; ++x) {
    for (Eigen::Index y = x + 1; y < n; ++y) {
      const double a = pi(x) * rates(x, y);
      const double b = pi(y) * rates(y, x);
      if (std::abs(a - b) > tolerance * std::max(a, b)) return false;
    }
  }
  return true;
}

}  // namespace

MarkovChain::MarkovChain(std::vector<std::string> labels, const Eigen::MatrixXd& rates,
                         std::optional<Eigen::VectorXd> pi, ChainOptions options)
    : labels_(std::move(labels)), options_(options) {
  const auto n = static_cast<Eigen::Index>(labels_.size());
  if (n < 2) throw Error(ErrorKind::InvalidInput, "a chain needs at least two states");
  if (rates.rows() != n || rates.cols() != n)
    throw Error(ErrorKind::InvalidInput, "rate matrix does not match the state count");
  {
    std::unordered_map<std::string, int> seen;
    for (const auto& l : labels_)
      if (++seen[l] > 1) throw Error(ErrorKind::InvalidInput, "duplicate state label '" + l + "'");
  }

  generator_ = rates;
  adjacency_.assign(labels_.size(), {});
  for (Eigen::Index x = 0; x < n; ++x) {
    double out = 0.0;
    for (Eigen::Index y = 0; y < n; ++y) {
      if (x == y) continue;
      const double r = rates(x, y);
      if (!std::isfinite(r)) throw Error(ErrorKind::InvalidInput, "non-finite rate");
      if (r < 0.0)
        throw Error(ErrorKind::NegativeRate,
                    "k(" + labels_[x] + "," + labels_[y] + ") = " + std::to_string(r));
      if (r > 0.0) adjacency_[x].push_back({static_cast<std::size_t>(y), r});
      out += r;
      max_rate_ = std::max(max_rate_, r);
    }
    generator_(x, x) = -out;
  }
  if (!is_irreducible(generator_))
    throw Error(ErrorKind::NonIrreducible, "the graph of positive rates is not strongly connected");

  if (pi) {
    if (pi->size() != n) throw Error(ErrorKind::InvalidInput, "pi has the wrong length");
    if ((pi->array() <= 0.0).any() || !pi->allFinite())
      throw Error(ErrorKind::InvalidInput, "pi must be strictly positive and finite");
    pi_ = *pi / pi->sum();
  } else {
    pi_ = stationary_measure(generator_, options_.tolerance);
  }
  if ((pi_.array() <= 0.0).any())
    throw Error(ErrorKind::InvalidInput, "stationary mass underflows to zero");
  if (!satisfies_detailed_balance(generator_, pi_, options_.tolerance))
    throw Error(ErrorKind::DetailedBalanceViolated,
                "pi(x) k(x,y) = pi(y) k(y,x) fails; residual " +
                    std::to_string(detailed_balance_residual(*this)));
}

std::size_t MarkovChain::index_of(std::string_view label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end())
    throw Error(ErrorKind::InvalidInput, "unknown state '" + std::string(label) + "'");
  return static_cast<std::size_t>(it - labels_.begin());
}

MarkovChain MarkovChain::with_truncation_flag(bool flag) const {
  MarkovChain copy = *this;
  copy.truncated_ = flag;
  return copy;
}

MarkovChain build_chain(const ChainSpec& spec, ChainOptions options) {
  const std::size_t n = spec.states.size();
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(spec.states[i], i);

  Eigen::MatrixXd rates = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                                static_cast<Eigen::Index>(n));
  for (const auto& entry : spec.rates) {
    const auto from = index.find(entry.from);
    const auto to = index.find(entry.to);
    if (from == index.end() || to == index.end())
      throw Error(ErrorKind::InvalidInput,
                  "rate references unknown state '" +
                      (from == index.end() ? entry.from : entry.to) + "'");
    if (entry.rate < 0.0)
      throw Error(ErrorKind::NegativeRate,
                  "k(" + entry.from + "," + entry.to + ") = " + std::to_string(entry.rate));
    if (from->second == to->second) continue;
    rates(static_cast<Eigen::Index>(from->second), static_cast<Eigen::Index>(to->second)) +=
        entry.rate;
  }

  std::optional<Eigen::VectorXd> pi;
  if (spec.pi) {
    pi = Eigen::Map<const Eigen::VectorXd>(spec.pi->data(),
                                           static_cast<Eigen::Index>(spec.pi->size()));
  }
  return MarkovChain(spec.states, rates, pi, options);
}

bool is_irreducible(const Eigen::MatrixXd& rates) {
  if (rates.rows() == 0) return false;
  const auto reach = [](const std::vector<int>& d) {
    return std::all_of(d.begin(), d.end(), [](int v) { return v >= 0; });
  };
  return reach(bfs(rates, 0, false)) && reach(bfs(rates, 0, true));
}

Eigen::VectorXd stationary_measure_dense(const Eigen::MatrixXd& rates) {
  const auto n = rates.rows();
  Eigen::MatrixXd gen = rates;
  for (Eigen::Index x = 0; x < n; ++x) {
    gen(x, x) = 0.0;
    gen(x, x) = -gen.row(x).sum();
  }
  Eigen::MatrixXd system = gen.transpose();
  system.row(n - 1).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs(n - 1) = 1.0;
  Eigen::VectorXd pi = system.fullPivLu().solve(rhs);
  return pi / pi.sum();
}

Eigen::VectorXd stationary_measure(const Eigen::MatrixXd& rates, double tolerance) {
  if (!is_irreducible(rates))
    throw Error(ErrorKind::NonIrreducible, "the graph of positive rates is not strongly connected");
  if (auto pi = tree_measure(rates); pi && satisfies_detailed_balance(rates, *pi, tolerance))
    return *pi;
  return stationary_measure_dense(rates);
}

double detailed_balance_residual(const MarkovChain& chain) {
  const auto& pi = chain.pi();
  const auto& gen = chain.generator();
  double worst = 0.0;
  for (Eigen::Index x = 0; x < gen.rows(); ++x)
    for (Eigen::Index y = x + 1; y < gen.rows(); ++y)
      worst = std::max(worst, std::abs(pi(x) * gen(x, y) - pi(y) * gen(y, x)));
  return worst;
}

LocalStats local_stats(const MarkovChain& chain) {
  const auto n = static_cast<Eigen::Index>(chain.size());
  LocalStats s;
  s.m1 = Eigen::VectorXd::Zero(n);
  s.m2 = Eigen::VectorXd::Zero(n);
  s.n_stat = Eigen::VectorXd::Zero(n);
  for (Eigen::Index x = 0; x < n; ++x)
    for (const auto& t : chain.neighbors(static_cast<std::size_t>(x))) s.m1(x) += t.rate;
  for (Eigen::Index x = 0; x < n; ++x) {
    for (const auto& t : chain.neighbors(static_cast<std::size_t>(x))) {
      const auto y = static_cast<Eigen::Index>(t.to);
      s.m2(x) += t.rate * s.m1(y);
      s.n_stat(x) += t.rate * chain.rate(y, x);
    }
  }
  s.m1_inf = s.m1.minCoeff();
  s.m1_sup = s.m1.maxCoeff();
  return s;
}

MarkovChain truncate_birth_death(const std::function<double(int)>& birth,
                                 const std::function<double(int)>& death, int cutoff) {
  if (cutoff < 1) throw Error(ErrorKind::BadParams, "cutoff must be at least 1");
  const Eigen::Index n = cutoff + 1;
  Eigen::MatrixXd rates = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd log_pi(n);
  log_pi(0) = 0.0;
  for (int x = 0; x < cutoff; ++x) {
    const double a = birth(x);
    const double b = death(x + 1);
    if (!(a > 0.0) || !(b > 0.0))
      throw Error(ErrorKind::ZeroRateInsideRange,
                  "a(" + std::to_string(x) + ") and b(" + std::to_string(x + 1) +
                      ") must be positive below the cutoff");
    rates(x, x + 1) = a;
    rates(x + 1, x) = b;
    log_pi(x + 1) = log_pi(x) + std::log(a) - std::log(b);
  }
  Eigen::VectorXd pi = (log_pi.array() - log_pi.maxCoeff()).exp();
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(n));
  for (int x = 0; x <= cutoff; ++x) labels.push_back(std::to_string(x));
  return MarkovChain(std::move(labels), rates, pi).with_truncation_flag(true);
}

std::vector<int> graph_distances(const MarkovChain& chain, std::size_t source) {
  std::vector<int> dist(chain.size(), -1);
  std::deque<std::size_t> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const std::size_t x = queue.front();
    queue.pop_front();
    for (const auto& t : chain.neighbors(x)) {
      if (dist[t.to] < 0) {
        dist[t.to] = dist[x] + 1;
        queue.push_back(t.to);
      }
    }
  }
  return dist;
}

std::vector<std::size_t> ball(const MarkovChain& chain, std::size_t x, int radius) {
  const auto dist = graph_distances(chain, x);
  std::vector<std::size_t> out;
  for (std::size_t y = 0; y < dist.size(); ++y)
    if (dist[y] >= 0 && dist[y] <= radius) out.push_back(y);
  return out;
}

}  // namespace curvcheck
