#include "curvcheck/cd.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <thread>

#include <boost/math/tools/minima.hpp>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include "curvcheck/error.hpp"
#include "curvcheck/functionals.hpp"
#include "curvcheck/operators.hpp"

namespace curvcheck {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::mt19937_64 trial_rng(std::uint64_t seed, std::size_t index) {
  const auto i = static_cast<std::uint64_t>(index);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32)};
  return std::mt19937_64(seq);
}

std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

struct LocalSearch {
  const MarkovChain& chain;
  std::size_t center;
  std::vector<std::size_t> vars;  // 2-ball minus the center

  StateFunction expand(const double* values) const {
    StateFunction f = StateFunction::Zero(static_cast<Eigen::Index>(chain.size()));
    for (std::size_t i = 0; i < vars.size(); ++i) f(static_cast<Eigen::Index>(vars[i])) = values[i];
    return f;
  }
};

LocalSearch make_search(const MarkovChain& chain, std::size_t x) {
  if (x >= chain.size()) throw Error(ErrorKind::InvalidInput, "state index out of range");
  if (chain.neighbors(x).empty())
    throw Error(ErrorKind::DegenerateNeighborhood, "state '" + chain.label(x) + "' has no neighbors");
  LocalSearch search{chain, x, {}};
  for (std::size_t y : ball(chain, x, 2))
    if (y != x) search.vars.push_back(y);
  return search;
}

// Nelder–Mead (GSL nmsimplex2) on an objective that records its own best point.
void nelder_mead(const std::function<double(const double*)>& objective, std::vector<double> start,
                 double step, int max_iterations) {
  const std::size_t dim = start.size();
  gsl_multimin_function fn;
  fn.n = dim;
  fn.params = const_cast<std::function<double(const double*)>*>(&objective);
  fn.f = [](const gsl_vector* v, void* params) {
    const auto& obj = *static_cast<const std::function<double(const double*)>*>(params);
    return obj(gsl_vector_const_ptr(v, 0));
  };
  gsl_vector* x = gsl_vector_alloc(dim);
  gsl_vector* steps = gsl_vector_alloc(dim);
  for (std::size_t i = 0; i < dim; ++i) gsl_vector_set(x, i, start[i]);
  gsl_vector_set_all(steps, step);
  gsl_multimin_fminimizer* solver = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, dim);
  gsl_multimin_fminimizer_set(solver, &fn, x, steps);
  for (int it = 0; it < max_iterations; ++it) {
    if (gsl_multimin_fminimizer_iterate(solver) != GSL_SUCCESS) break;
    const double size = gsl_multimin_fminimizer_size(solver);
    if (gsl_multimin_test_size(size, 1e-12 * std::max(1.0, step)) == GSL_SUCCESS) break;
  }
  gsl_multimin_fminimizer_free(solver);
  gsl_vector_free(steps);
  gsl_vector_free(x);
}

struct GslQuiet {
  gsl_error_handler_t* previous = gsl_set_error_handler_off();
  ~GslQuiet() { gsl_set_error_handler(previous); }
};

}  // namespace

double SlackTerms::tolerance() const {
  return 1e-8 * (1.0 + std::abs(psi2) + std::abs(kappa * psi) + std::abs(dimension));
}

SlackTerms cd_slack_terms(const MarkovChain& chain, std::size_t x,
                          const Eigen::Ref<const Eigen::VectorXd>& f, double kappa, const CDFunction& F) {
  SlackTerms terms;
  terms.kappa = kappa;
  terms.psi2 = psi2_at(chain, f, UpsilonKernel{}, x);
  terms.psi = psi_at(chain, f, UpsilonKernel{}, x);
  terms.generator = generator_at(chain, f, x);
  terms.dimension = cd_value(F, -terms.generator);
  return terms;
}

double cd_slack(const MarkovChain& chain, std::size_t x, const Eigen::Ref<const Eigen::VectorXd>& f,
                double kappa, const CDFunction& F) {
  return cd_slack_terms(chain, x, f, kappa, F).slack();
}

std::string_view to_string(CDVerdict::Status status) {
  switch (status) {
    case CDVerdict::Status::CertifiedByFamily: return "certified-by-family";
    case CDVerdict::Status::Falsified: return "falsified";
    case CDVerdict::Status::PassedSampling: return "passed-sampling";
  }
  return "unknown";
}

StateFunction sample_trial_function(const MarkovChain& chain, std::uint64_t seed, std::size_t index,
                                    const SamplerConfig& config) {
  auto rng = trial_rng(seed, index);
  std::normal_distribution<double> normal;
  const auto n = static_cast<Eigen::Index>(chain.size());
  if (config.constants_only || config.scales.empty())
    return StateFunction::Constant(n, config.constants_only ? normal(rng) : 0.0);

  enum class Family { Gaussian, Spike, Indicator, Local };
  std::vector<std::pair<Family, double>> families;
  for (double s : config.scales) families.emplace_back(Family::Gaussian, s);
  if (config.spikes) families.emplace_back(Family::Spike, 0.0);
  if (config.indicators) families.emplace_back(Family::Indicator, 0.0);
  if (config.local) families.emplace_back(Family::Local, 0.0);

  const auto [family, fixed_scale] = families[index % families.size()];
  const double scale = family == Family::Gaussian ? fixed_scale
                                                  : config.scales[uniform_index(rng, config.scales.size())];
  StateFunction f = StateFunction::Zero(n);
  switch (family) {
    case Family::Gaussian:
      for (Eigen::Index i = 0; i < n; ++i) f(i) = scale * normal(rng);
      break;
    case Family::Spike: {
      const auto x = static_cast<Eigen::Index>(uniform_index(rng, chain.size()));
      f.setConstant(scale * normal(rng));
      f(x) = 0.0;
      break;
    }
    case Family::Indicator: {
      const auto x = static_cast<Eigen::Index>(uniform_index(rng, chain.size()));
      f(x) = scale * normal(rng);
      break;
    }
    case Family::Local: {
      const std::size_t x = uniform_index(rng, chain.size());
      for (std::size_t y : ball(chain, x, 2))
        if (y != x) f(static_cast<Eigen::Index>(y)) = scale * normal(rng);
      break;
    }
  }
  return f;
}

CDVerdict verify_cd_random(const MarkovChain& chain, double kappa, const CDFunction& F,
                           std::size_t trials, std::uint64_t seed, const SamplerConfig& config) {
  if (trials == 0) throw Error(ErrorKind::InvalidInput, "trials must be at least 1");

  struct Partial {
    double worst = kInf;
    std::size_t worst_trial = 0;
    std::size_t worst_state = 0;
    std::optional<std::size_t> first_violation;
    std::size_t violation_state = 0;
    double violation_slack = 0.0;
  };

  const auto run_range = [&](std::size_t begin, std::size_t end, Partial& out) {
    for (std::size_t i = begin; i < end; ++i) {
      const StateFunction f = sample_trial_function(chain, seed, i, config);
      const StateFunction p2 = psi2(chain, f, UpsilonKernel{});
      const StateFunction p = psi(chain, f, UpsilonKernel{});
      const StateFunction lf = generator_apply(chain, f);
      for (std::size_t x = 0; x < chain.size(); ++x) {
        const auto xi = static_cast<Eigen::Index>(x);
        SlackTerms terms{p2(xi), p(xi), lf(xi), cd_value(F, -lf(xi)), kappa};
        const double s = terms.slack();
        if (s < out.worst) {
          out.worst = s;
          out.worst_trial = i;
          out.worst_state = x;
        }
        if (!out.first_violation && terms.violated()) {
          out.first_violation = i;
          out.violation_state = x;
          out.violation_slack = s;
        }
      }
    }
  };

  unsigned workers = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, trials));
  std::vector<Partial> partials(workers);
  if (workers == 1) {
    run_range(0, trials, partials[0]);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (trials + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(trials, w * chunk);
      const std::size_t end = std::min(trials, begin + chunk);
      pool.emplace_back(run_range, begin, end, std::ref(partials[w]));
    }
    for (auto& t : pool) t.join();
  }

  // chunks are ordered by trial index, so "first strictly better" keeps the lowest index on ties
  CDVerdict verdict;
  verdict.trials = trials;
  verdict.seed = seed;
  verdict.worst_slack = kInf;
  for (const auto& part : partials) {
    if (part.worst < verdict.worst_slack) {
      verdict.worst_slack = part.worst;
      verdict.worst_trial = part.worst_trial;
      verdict.worst_state = part.worst_state;
    }
    if (part.first_violation && !verdict.witness) {
      verdict.status = CDVerdict::Status::Falsified;
      verdict.witness = sample_trial_function(chain, seed, *part.first_violation, config);
      verdict.witness_state = part.violation_state;
      verdict.witness_slack = part.violation_slack;
    }
  }
  return verdict;
}

KappaEstimate estimate_kappa_infty(const MarkovChain& chain, std::size_t x, CurvatureVariant variant,
                                   const SearchOptions& options) {
  const LocalSearch search = make_search(chain, x);
  const GslQuiet quiet;
  const ScalarKernel kernel =
      variant == CurvatureVariant::Upsilon ? ScalarKernel{UpsilonKernel{}} : ScalarKernel{SquareKernel{}};

  KappaEstimate best;
  best.value = kInf;
  const std::function<double(const double*)> objective = [&](const double* values) {
    const StateFunction f = search.expand(values);
    const double denom = psi_at(chain, f, kernel, x);
    const double numer = psi2_at(chain, f, kernel, x);
    ++best.evaluations;
    if (!(denom > 1e-300) || !std::isfinite(numer) || !std::isfinite(denom)) return 1e300;
    const double ratio = numer / denom;
    if (ratio < best.value) {
      best.value = ratio;
      best.witness = f;
    }
    return ratio;
  };

  std::vector<double> scales = options.scales;
  // the small-amplitude regime, where the Υ ratio approaches Γ₂/Γ
  if (variant == CurvatureVariant::Upsilon) scales.push_back(1e-3);
  auto rng = trial_rng(options.seed, x);
  std::normal_distribution<double> normal;
  const std::size_t dim = search.vars.size();
  for (double scale : scales) {
    for (int s = 0; s < options.starts_per_scale; ++s) {
      std::vector<double> start(dim);
      for (auto& v : start) v = scale * normal(rng);
      objective(start.data());
      nelder_mead(objective, start, 0.5 * scale, options.max_iterations);
    }
  }
  if (!std::isfinite(best.value))
    throw Error(ErrorKind::DegenerateNeighborhood, "no admissible function found at '" + chain.label(x) + "'");
  return best;
}

DimensionEstimate estimate_dimension(const MarkovChain& chain, std::size_t x, double kappa, double delta,
                                     const SearchOptions& options) {
  const LocalSearch search = make_search(chain, x);
  const GslQuiet quiet;
  DimensionEstimate best;
  const std::function<double(const double*)> objective = [&](const double* values) {
    const StateFunction f = search.expand(values);
    ++best.evaluations;
    const SlackTerms t = cd_slack_terms(chain, x, f, kappa, PowerType{});
    const double drift = -t.generator;
    if (!(drift > 0.0) || !std::isfinite(t.psi2)) return 0.0;
    const double denom = t.slack();
    if (denom <= -t.tolerance()) {
      if (!best.infinite) best.witness = f;
      best.infinite = true;
      best.value = kInf;
      return -1e300;
    }
    if (!(denom > 0.0)) return 0.0;
    const double ratio = std::pow(drift, 1.0 + delta) / denom;
    if (!best.infinite && ratio > best.value) {
      best.value = ratio;
      best.witness = f;
    }
    return -ratio;
  };

  auto rng = trial_rng(options.seed, x);
  std::normal_distribution<double> normal;
  const std::size_t dim = search.vars.size();
  std::vector<double> scales = options.scales;
  scales.push_back(1e-3);
  for (double scale : scales) {
    for (int s = 0; s < options.starts_per_scale && !best.infinite; ++s) {
      std::vector<double> start(dim);
      for (auto& v : start) v = scale * normal(rng);
      objective(start.data());
      nelder_mead(objective, start, 0.5 * scale, options.max_iterations);
    }
  }
  return best;
}

DimensionEstimate birth_death_dimension_probe(const MarkovChain& chain, std::size_t x, double kappa,
                                              double delta) {
  if (x < 2 || x >= chain.size()) throw Error(ErrorKind::InvalidInput, "probe needs 2 <= x < size");
  DimensionEstimate best;
  const auto probe = [&](double s) {
    StateFunction f = StateFunction::Zero(static_cast<Eigen::Index>(chain.size()));
    f(static_cast<Eigen::Index>(x - 1)) = s;
    f(static_cast<Eigen::Index>(x - 2)) = 2.0 * s;
    return f;
  };
  const auto ratio_at = [&](double s) {
    const StateFunction f = probe(s);
    ++best.evaluations;
    const SlackTerms t = cd_slack_terms(chain, x, f, kappa, PowerType{});
    const double drift = -t.generator;
    const double denom = t.slack();
    if (drift > 0.0 && denom <= -t.tolerance()) {
      if (!best.infinite) best.witness = f;
      best.infinite = true;
      best.value = kInf;
      return kInf;
    }
    if (!(drift > 0.0) || !(denom > 0.0)) return 0.0;
    const double r = std::pow(drift, 1.0 + delta) / denom;
    if (!best.infinite && r > best.value) {
      best.value = r;
      best.witness = f;
    }
    return r;
  };

  // s = -10^u for u on a grid, then Brent around the best node
  const int points = 2001;
  double best_u = 0.0;
  double best_r = -1.0;
  for (int i = 0; i < points; ++i) {
    const double u = -4.0 + 6.0 * i / (points - 1);
    const double r = ratio_at(-std::pow(10.0, u));
    if (r > best_r) {
      best_r = r;
      best_u = u;
    }
  }
  if (!best.infinite) {
    const double h = 6.0 / (points - 1);
    boost::math::tools::brent_find_minima([&](double u) { return -ratio_at(-std::pow(10.0, u)); },
                                          best_u - h, best_u + h, 50);
  }
  return best;
}

double c_delta(double delta) {
  if (!(delta >= 1.0)) throw Error(ErrorKind::BadParams, "c_delta needs delta >= 1");
  if (delta == 1.0) return 1.0;
  const auto ratio = [delta](double u) {
    const double r = std::exp(u);
    return (upsilon(r) + upsilon(-r)) / std::pow(r, 1.0 + delta);
  };
  const auto result = boost::math::tools::brent_find_minima(ratio, std::log(1e-4), std::log(100.0),
                                                            std::numeric_limits<double>::digits);
  return result.second;
}

double gamma_value(const GammaKernel& gamma, double r) {
  if (const auto* p = std::get_if<PowerGamma>(&gamma)) return p->coef * std::pow(std::abs(r), 1.0 + p->delta);
  const auto& nu_g = std::get<NuGamma>(gamma);
  return nu(nu_g.c, nu_g.d, -r);
}

CDFunction jensen_dimension_bound(const MarkovChain& chain, const GammaKernel& gamma,
                                  const std::vector<double>& alpha) {
  if (alpha.size() != chain.size()) throw Error(ErrorKind::BadParams, "one alpha per state is required");
  const double alpha_star = *std::min_element(alpha.begin(), alpha.end());
  if (alpha_star < 0.0) throw Error(ErrorKind::BadParams, "alpha must be nonnegative");
  const LocalStats stats = local_stats(chain);
  if (!std::isfinite(stats.m1_sup)) throw Error(ErrorKind::UnboundedM1, "M1 is unbounded");
  const double scale = alpha_star * stats.m1_inf;
  if (const auto* p = std::get_if<PowerGamma>(&gamma)) {
    if (scale * p->coef == 0.0) return PowerType{};
    return PowerType{std::pow(stats.m1_sup, 1.0 + p->delta) / (scale * p->coef), p->delta};
  }
  const auto& nu_g = std::get<NuGamma>(gamma);
  return NuBased{scale, nu_g.c, nu_g.d, stats.m1_sup};
}

double jensen_premise_slack(const MarkovChain& chain, double kappa, const GammaKernel& gamma,
                            const std::vector<double>& alpha, std::size_t trials, std::uint64_t seed) {
  if (alpha.size() != chain.size()) throw Error(ErrorKind::BadParams, "one alpha per state is required");
  double worst = kInf;
  for (std::size_t i = 0; i < trials; ++i) {
    const StateFunction f = sample_trial_function(chain, seed, i);
    const StateFunction p2 = psi2(chain, f, UpsilonKernel{});
    const StateFunction p = psi(chain, f, UpsilonKernel{});
    for (std::size_t x = 0; x < chain.size(); ++x) {
      const auto xi = static_cast<Eigen::Index>(x);
      double extra = 0.0;
      for (const auto& t : chain.neighbors(x))
        extra += t.rate * gamma_value(gamma, f(xi) - f(static_cast<Eigen::Index>(t.to)));
      const double lhs = p2(xi);
      const double rhs = kappa * p(xi) + alpha[x] * extra;
      const double slack = (lhs - rhs) / (1.0 + std::abs(lhs) + std::abs(rhs));
      worst = std::min(worst, slack);
    }
  }
  return worst;
}

double spike_condition(double ratio, double t, double n_target) {
  const double tp = upsilon_prime(t) * t;
  return ratio * (tp + upsilon(-t)) + tp - upsilon(t) - t * t / n_target;
}

bool NegativeCriterionReport::any_violation() const {
  return std::any_of(entries.begin(), entries.end(), [](const auto& e) { return e.violated; });
}

NegativeCriterionReport negative_criterion(const MarkovChain& chain, const std::vector<std::size_t>& states,
                                           double n_target) {
  if (states.empty()) throw Error(ErrorKind::InvalidInput, "at least one state is required");
  if (!(n_target > 0.0)) throw Error(ErrorKind::BadParams, "target dimension must be positive");
  const LocalStats stats = local_stats(chain);
  NegativeCriterionReport report;
  report.n_target = n_target;
  for (std::size_t x : states) {
    if (x >= chain.size()) throw Error(ErrorKind::InvalidInput, "state index out of range");
    NegativeCriterionEntry entry;
    entry.state = x;
    const auto xi = static_cast<Eigen::Index>(x);
    entry.ratio = stats.n_stat(xi) / (stats.m1(xi) * stats.m1(xi));
    // t = -10^u, u ∈ [-4, 2]
    const auto lhs = [&](double u) { return spike_condition(entry.ratio, -std::pow(10.0, u), n_target); };
    const int points = 3001;
    const double h = 6.0 / (points - 1);
    double best_u = -4.0;
    double best = kInf;
    for (int i = 0; i < points; ++i) {
      const double u = -4.0 + h * i;
      const double v = lhs(u);
      if (v < best) {
        best = v;
        best_u = u;
      }
    }
    const auto refined = boost::math::tools::brent_find_minima(lhs, best_u - h, best_u + h, 50);
    if (refined.second < best) {
      best = refined.second;
      best_u = refined.first;
    }
    entry.t_star = -std::pow(10.0, best_u);
    entry.min_lhs = best;
    entry.violated = best < 0.0;
    StateFunction spike = StateFunction::Constant(static_cast<Eigen::Index>(chain.size()), entry.t_star);
    spike(xi) = 0.0;
    entry.cd_slack = cd_slack(chain, x, spike, 0.0, PowerType{n_target, 1.0});
    report.entries.push_back(entry);
  }
  return report;
}

IndicatorProbe indicator_probe(const MarkovChain& chain, std::size_t x, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error(ErrorKind::BadParams, "epsilon must lie in (0,1)");
  if (x >= chain.size()) throw Error(ErrorKind::InvalidInput, "state index out of range");
  const double p = chain.pi()(static_cast<Eigen::Index>(x));
  const double peak_mass = 1.0 - epsilon * (1.0 - p);
  IndicatorProbe probe;
  probe.f = StateFunction::Constant(static_cast<Eigen::Index>(chain.size()), epsilon);
  probe.f(static_cast<Eigen::Index>(x)) = peak_mass / p;
  const LocalStats stats = local_stats(chain);
  probe.entropy_closed = peak_mass * std::log(peak_mass / p) + epsilon * std::log(epsilon) * (1.0 - p);
  probe.fisher_closed =
      stats.m1(static_cast<Eigen::Index>(x)) * (1.0 - epsilon) * std::log(peak_mass / (epsilon * p));
  probe.entropy_direct = entropy(chain, probe.f);
  probe.fisher_direct = fisher_information(chain, probe.f);
  return probe;
}

RicciFlatReport ricci_flat_check(const MarkovChain& chain, const EtaMaps& eta) {
  const std::size_t n = chain.size();
  const std::size_t d = chain.neighbors(0).size();
  for (std::size_t x = 0; x < n; ++x) {
    if (chain.neighbors(x).size() != d)
      throw Error(ErrorKind::InvalidInput, "graph is not regular at '" + chain.label(x) + "'");
    for (const auto& t : chain.neighbors(x))
      if (t.rate != 1.0) throw Error(ErrorKind::InvalidInput, "rates must all equal 1");
  }
  if (eta.size() != n) throw Error(ErrorKind::MalformedMaps, "one map family per vertex is required");
  std::vector<std::set<std::size_t>> nbrs(n);
  for (std::size_t x = 0; x < n; ++x)
    for (const auto& t : chain.neighbors(x)) nbrs[x].insert(t.to);

  for (std::size_t x = 0; x < n; ++x) {
    if (eta[x].size() != d)
      throw Error(ErrorKind::MalformedMaps, "vertex '" + chain.label(x) + "' needs exactly " + std::to_string(d) + " maps");
    const auto ball1 = ball(chain, x, 1);
    for (const auto& map : eta[x]) {
      if (map.size() != ball1.size())
        throw Error(ErrorKind::MalformedMaps, "map domain at '" + chain.label(x) + "' is not the closed 1-ball");
      for (std::size_t u : ball1) {
        const auto it = map.find(u);
        if (it == map.end())
          throw Error(ErrorKind::MalformedMaps, "map at '" + chain.label(x) + "' misses '" + chain.label(u) + "'");
        if (it->second >= n) throw Error(ErrorKind::MalformedMaps, "map value out of range");
      }
    }
  }

  const auto fail = [&chain](int condition, std::size_t x, std::size_t i, std::string detail) {
    return RicciFlatReport{false, condition, x, i, "at '" + chain.label(x) + "': " + detail};
  };
  for (std::size_t x = 0; x < n; ++x) {
    const auto ball1 = ball(chain, x, 1);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t u : ball1)
        if (!nbrs[u].count(eta[x][i].at(u)))
          return fail(1, x, i, "eta_" + std::to_string(i + 1) + "(" + chain.label(u) + ") is not a neighbor");
    for (std::size_t u : ball1)
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
          if (eta[x][i].at(u) == eta[x][j].at(u))
            return fail(2, x, i,
                        "eta_" + std::to_string(i + 1) + " and eta_" + std::to_string(j + 1) + " agree at " +
                            chain.label(u));
    for (std::size_t i = 0; i < d; ++i) {
      std::set<std::size_t> left;
      std::set<std::size_t> right;
      for (std::size_t j = 0; j < d; ++j) {
        left.insert(eta[x][j].at(eta[x][i].at(x)));
        right.insert(eta[x][i].at(eta[x][j].at(x)));
      }
      if (left != right) return fail(3, x, i, "eta_" + std::to_string(i + 1) + " does not commute with the family");
    }
    for (std::size_t i = 0; i < d; ++i)
      if (eta[x][i].at(eta[x][i].at(x)) != x)
        return fail(4, x, i, "eta_" + std::to_string(i + 1) + " is not an involution at the center");
  }
  return {};
}

}  // namespace curvcheck
