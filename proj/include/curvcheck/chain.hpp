#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace curvcheck {

/// One real value per state, indexed like MarkovChain::labels().
using StateFunction = Eigen::VectorXd;

struct Transition {
  std::size_t to;
  double rate;
};

struct ChainOptions {
  /// Relative tolerance for measure identities (normalization, detailed balance).
  double tolerance = 1e-10;
};

/// A finite, irreducible, reversible continuous-time Markov chain.
///
/// The constructor validates every invariant (nonnegative rates, at least two
/// states, strong connectivity, detailed balance against pi, normalization)
/// and the object is immutable afterwards. Diagonal generator entries are
/// stored as minus the row sum of the off-diagonal rates.
class MarkovChain {
 public:
  /// `rates(x, y)` for x != y is the jump rate; the diagonal is ignored.
  /// When `pi` is empty it is computed with stationary_measure(); a supplied
  /// pi is normalized and then checked for detailed balance.
  MarkovChain(std::vector<std::string> labels, const Eigen::MatrixXd& rates,
              std::optional<Eigen::VectorXd> pi = std::nullopt, ChainOptions options = {});

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t x) const { return labels_[x]; }
  std::size_t index_of(std::string_view label) const;

  /// Full generator matrix including the diagonal.
  const Eigen::MatrixXd& generator() const { return generator_; }
  double rate(std::size_t x, std::size_t y) const { return generator_(x, y); }

  /// Outgoing transitions with positive rate, in increasing target order.
  const std::vector<Transition>& neighbors(std::size_t x) const { return adjacency_[x]; }

  const Eigen::VectorXd& pi() const { return pi_; }
  double max_rate() const { return max_rate_; }
  const ChainOptions& options() const { return options_; }

  /// Set for chains obtained by cutting an infinite state space; results on
  /// such chains are heuristic.
  bool truncated() const { return truncated_; }
  MarkovChain with_truncation_flag(bool flag) const;

 private:
  std::vector<std::string> labels_;
  Eigen::MatrixXd generator_;
  std::vector<std::vector<Transition>> adjacency_;
  Eigen::VectorXd pi_;
  double max_rate_ = 0.0;
  ChainOptions options_;
  bool truncated_ = false;
};

struct RateEntry {
  std::string from;
  std::string to;
  double rate = 0.0;
};

/// Explicit chain description: named states plus a rate list.
struct ChainSpec {
  std::vector<std::string> states;
  std::vector<RateEntry> rates;
  std::optional<std::vector<double>> pi;
};

MarkovChain build_chain(const ChainSpec& spec, ChainOptions options = {});

/// Strong connectivity of the directed graph of positive off-diagonal rates.
bool is_irreducible(const Eigen::MatrixXd& rates);

/// Invariant probability vector of the rate matrix (diagonal ignored).
///
/// Uses the tree recursion pi(y) = pi(x) k(x,y) / k(y,x) when every positive
/// rate has a positive reverse rate and the result satisfies detailed balance;
/// otherwise solves pi L = 0 by a dense LU solve. Throws NonIrreducible.
Eigen::VectorXd stationary_measure(const Eigen::MatrixXd& rates, double tolerance = 1e-10);

/// Dense route only: solves the transposed generator system with one row
/// replaced by the normalization constraint.
Eigen::VectorXd stationary_measure_dense(const Eigen::MatrixXd& rates);

/// max_{x,y} |pi(x) k(x,y) - pi(y) k(y,x)|.
double detailed_balance_residual(const MarkovChain& chain);

struct LocalStats {
  Eigen::VectorXd m1;      // sum_{y != x} k(x,y)
  Eigen::VectorXd m2;      // sum_{y != x} k(x,y) sum_{z != y} k(y,z)
  Eigen::VectorXd n_stat;  // sum_{y != x} k(x,y) k(y,x)
  double m1_inf = 0.0;
  double m1_sup = 0.0;
};

LocalStats local_stats(const MarkovChain& chain);

/// Birth-death chain on {0, ..., cutoff} with birth rates a(x) and death rates
/// b(x). The birth rate at the cutoff is dropped; pi follows the recursion
/// a(x) pi(x) = b(x+1) pi(x+1), normalized. The result is flagged truncated.
MarkovChain truncate_birth_death(const std::function<double(int)>& birth,
                                 const std::function<double(int)>& death, int cutoff);

/// Combinatorial distances from `source` along positive rates; -1 when unreachable.
std::vector<int> graph_distances(const MarkovChain& chain, std::size_t source);

/// States within combinatorial distance `radius` of x, sorted, x included.
std::vector<std::size_t> ball(const MarkovChain& chain, std::size_t x, int radius);

}  // namespace curvcheck
