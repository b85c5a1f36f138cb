#include "curvcheck/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "curvcheck/cd.hpp"
#include "curvcheck/chain_io.hpp"
#include "curvcheck/error.hpp"
#include "curvcheck/functionals.hpp"
#include "curvcheck/growth.hpp"
#include "curvcheck/inequalities.hpp"
#include "curvcheck/report.hpp"
#include "curvcheck/resistance.hpp"
#include "curvcheck/semigroup.hpp"

namespace curvcheck::cli {
namespace {

using nlohmann::json;

struct Globals {
  std::string json_path;
  std::string csv_path;
  unsigned threads = 0;
  double tol = 1e-10;
};

struct Outcome {
  int code = kOk;
  json body;
  std::string csv;
  std::optional<std::uint64_t> seed;
  std::string spec_text;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("CURVCHECK_SEED")) {
    const std::string text(env);
    try {
      std::size_t used = 0;
      const auto value = std::stoull(text, &used);
      if (used == text.size()) return value;
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::InvalidInput, "CURVCHECK_SEED must be a nonnegative integer");
  }
  return 1;
}

std::string fmt(double v, int precision = 10) {
  std::ostringstream s;
  s << std::setprecision(precision) << v;
  return s.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream file(path);
  if (!file) throw Error(ErrorKind::InvalidInput, "cannot write '" + path + "'");
  file << content;
}

LoadedChain load(const std::string& path, std::istream& in, const Globals& globals) {
  ChainOptions options;
  options.tolerance = globals.tol;
  return parse_chain_spec(read_text(path, in), options);
}

void note_truncation(const MarkovChain& chain, std::ostream& out, json& body) {
  body["heuristic"] = chain.truncated();
  if (chain.truncated()) out << "note: truncated chain, results are heuristic\n";
}

// CD_Υ(κ', F') implies CD_Υ(κ, F) when κ ≤ κ' and F ≤ F'
bool dominated_by(double kappa, const CDFunction& F, const Certificate& cert) {
  if (kappa > cert.kappa + 1e-12) return false;
  for (int i = 0; i <= 480; ++i) {
    const double r = std::pow(10.0, -6.0 + i / 40.0);
    if (cd_value(F, r) > cd_value(cert.F, r) * (1.0 + 1e-12)) return false;
  }
  return true;
}

std::optional<GrowthFunction> growth_for(const std::string& descriptor, const Example& ex) {
  if (!descriptor.empty()) return parse_growth(descriptor);
  if (!ex.certificate || !(ex.certificate->kappa > 0.0)) return std::nullopt;
  if (const auto* p = std::get_if<PowerType>(&ex.certificate->F); p && std::isfinite(p->n))
    return growth_from_power_cd(p->n, ex.certificate->kappa, p->delta);
  return std::nullopt;
}

std::mt19937_64 sample_rng(std::uint64_t seed, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

// ---------------------------------------------------------------------------

Outcome chain_check(const std::string& spec, std::istream& in, std::ostream& out, const Globals& g) {
  const LoadedChain loaded = load(spec, in, g);
  const MarkovChain& chain = loaded.chain();
  const LocalStats stats = local_stats(chain);
  Outcome res;
  res.spec_text = loaded.text;
  out << "chain: " << chain.size() << " states, family " << loaded.example.family << "\n";
  out << "detailed balance residual: " << fmt(detailed_balance_residual(chain)) << "\n";
  out << "M1 inf/sup: " << fmt(stats.m1_inf) << " / " << fmt(stats.m1_sup) << "\n";
  std::ostringstream csv;
  csv << "state,pi,m1,m2,n\n";
  out << "state\tpi\tM1\tM2\tN\n";
  for (std::size_t x = 0; x < chain.size(); ++x) {
    const auto i = static_cast<Eigen::Index>(x);
    out << chain.label(x) << '\t' << fmt(chain.pi()(i)) << '\t' << fmt(stats.m1(i)) << '\t' << fmt(stats.m2(i))
        << '\t' << fmt(stats.n_stat(i)) << "\n";
    csv << chain.label(x) << ',' << fmt(chain.pi()(i), 17) << ',' << fmt(stats.m1(i), 17) << ','
        << fmt(stats.m2(i), 17) << ',' << fmt(stats.n_stat(i), 17) << "\n";
  }
  if (loaded.example.certificate)
    out << "certificate: kappa = " << fmt(loaded.example.certificate->kappa) << ", F = "
        << describe(loaded.example.certificate->F) << "\n";
  for (const auto& note : loaded.example.notes) out << "note: " << note << "\n";
  res.body = {{"states", chain.size()},
              {"family", loaded.example.family},
              {"pi", to_json(chain, chain.pi())},
              {"m1", to_json(chain, stats.m1)},
              {"m2", to_json(chain, stats.m2)},
              {"n_stat", to_json(chain, stats.n_stat)},
              {"m1_inf", stats.m1_inf},
              {"m1_sup", stats.m1_sup},
              {"detailed_balance_residual", detailed_balance_residual(chain)}};
  note_truncation(chain, out, res.body);
  res.csv = csv.str();
  return res;
}

Outcome curvature(const std::string& spec, const std::string& variant, const std::string& state,
                  std::optional<std::uint64_t> seed_flag, int starts, std::istream& in, std::ostream& out,
                  const Globals& g) {
  const LoadedChain loaded = load(spec, in, g);
  const MarkovChain& chain = loaded.chain();
  CurvatureVariant v;
  if (variant == "upsilon") {
    v = CurvatureVariant::Upsilon;
  } else if (variant == "be") {
    v = CurvatureVariant::BakryEmery;
  } else {
    throw Error(ErrorKind::InvalidInput, "variant must be upsilon or be");
  }
  SearchOptions options;
  options.seed = resolve_seed(seed_flag);
  options.starts_per_scale = starts;
  std::vector<std::size_t> states;
  if (state.empty()) {
    for (std::size_t x = 0; x < chain.size(); ++x) states.push_back(x);
  } else {
    states.push_back(chain.index_of(state));
  }
  Outcome res;
  res.spec_text = loaded.text;
  res.seed = options.seed;
  json per_state = json::object();
  std::ostringstream csv;
  csv << "state,kappa\n";
  double minimum = std::numeric_limits<double>::infinity();
  for (std::size_t x : states) {
    const KappaEstimate est = estimate_kappa_infty(chain, x, v, options);
    out << "kappa(" << chain.label(x) << ") <= " << fmt(est.value) << "\n";
    per_state[chain.label(x)] = {{"kappa", number(est.value)}, {"evaluations", est.evaluations}};
    csv << chain.label(x) << ',' << fmt(est.value, 17) << "\n";
    minimum = std::min(minimum, est.value);
  }
  out << "estimate (upper bound on any admissible kappa): " << fmt(minimum) << "\n";
  res.body = {{"variant", variant}, {"states", per_state}, {"kappa", number(minimum)}};
  note_truncation(chain, out, res.body);
  res.csv = csv.str();
  return res;
}

Outcome cd_verify(const std::string& spec, double kappa, const std::string& cdfun, std::size_t trials,
                  std::optional<std::uint64_t> seed_flag, std::istream& in, std::ostream& out,
                  const Globals& g) {
  const LoadedChain loaded = load(spec, in, g);
  const MarkovChain& chain = loaded.chain();
  const CDFunction F = parse_cd_function(cdfun);
  const CDFunctionCheck check = check_cd_function(F);
  if (!is_zero(F) && !check.ok())
    throw Error(ErrorKind::InvalidInput, "'" + cdfun + "' is not a CD-function");
  SamplerConfig config;
  config.threads = g.threads;
  const std::uint64_t seed = resolve_seed(seed_flag);
  CDVerdict verdict = verify_cd_random(chain, kappa, F, trials, seed, config);
  if (verdict.status == CDVerdict::Status::PassedSampling && loaded.example.certificate &&
      dominated_by(kappa, F, *loaded.example.certificate))
    verdict.status = CDVerdict::Status::CertifiedByFamily;

  Outcome res;
  res.spec_text = loaded.text;
  res.seed = seed;
  out << "CD(" << fmt(kappa) << ", " << describe(F) << "): " << to_string(verdict.status) << "\n";
  out << "trials: " << trials << ", worst slack " << fmt(verdict.worst_slack) << " at state "
      << chain.label(verdict.worst_state) << "\n";
  std::ostringstream csv;
  csv << "state,witness\n";
  if (verdict.witness) {
    out << "witness at state " << chain.label(*verdict.witness_state) << " (slack " << fmt(verdict.witness_slack)
        << "):\n";
    for (std::size_t x = 0; x < chain.size(); ++x) {
      const double v = (*verdict.witness)(static_cast<Eigen::Index>(x));
      out << "  " << chain.label(x) << " = " << fmt(v, 17) << "\n";
      csv << chain.label(x) << ',' << fmt(v, 17) << "\n";
    }
    res.code = kMathFailure;
  }
  res.body = to_json(chain, verdict);
  res.body["kappa"] = kappa;
  res.body["cdfun"] = describe(F);
  note_truncation(chain, out, res.body);
  res.csv = csv.str();
  return res;
}

Outcome entropy_decay(const std::string& spec, const std::string& density, const std::string& grid,
                      std::optional<double> kappa_flag, const std::string& cdfun, std::istream& in,
                      std::ostream& out, const Globals& g) {
  const LoadedChain loaded = load(spec, in, g);
  const MarkovChain& chain = loaded.chain();
  const StateFunction f = parse_density(read_text(density, in), chain);
  const std::vector<double> times = parse_time_grid(grid);
  const EntropyTrajectory traj = entropy_trajectory(chain, f, times);

  double kappa = 0.0;
  CDFunction F = PowerType{};
  if (kappa_flag || !cdfun.empty()) {
    kappa = kappa_flag.value_or(0.0);
    if (!cdfun.empty()) F = parse_cd_function(cdfun);
  } else if (loaded.example.certificate) {
    kappa = loaded.example.certificate->kappa;
    F = loaded.example.certificate->F;
  }
  const EntropyOdeReport ode = check_entropy_ode(traj, kappa, F);

  Outcome res;
  res.spec_text = loaded.text;
  out << "t\tLambda\tLambda'\tLambda''\tslack\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i)
    out << fmt(traj.times[i], 6) << '\t' << fmt(traj.lambda[i]) << '\t' << fmt(traj.lambda_prime[i]) << '\t'
        << fmt(traj.lambda_double_prime[i]) << '\t' << fmt(ode.slack[i]) << "\n";
  out << "ODE check with kappa = " << fmt(kappa) << ", F = " << describe(F) << ": min slack "
      << fmt(ode.min_slack) << (ode.monotone ? "" : ", entropy NOT monotone") << "\n";
  if (traj.clamped_entries > 0) out << "note: " << traj.clamped_entries << " entries clamped before logs\n";
  const bool ok = ode.min_slack >= -1e-8 && ode.monotone;
  if (!ok) res.code = kMathFailure;
  double worst_fd = 0.0;
  for (double e : traj.fd_error) worst_fd = std::max(worst_fd, e);
  res.body = {{"times", traj.times},
              {"lambda", traj.lambda},
              {"lambda_prime", traj.lambda_prime},
              {"lambda_double_prime", traj.lambda_double_prime},
              {"slack", ode.slack},
              {"min_slack", ode.min_slack},
              {"monotone", ode.monotone},
              {"kappa", kappa},
              {"cdfun", describe(F)},
              {"max_fd_error", worst_fd},
              {"pass", ok}};
  note_truncation(chain, out, res.body);
  std::ostringstream csv;
  write_trajectory_csv(csv, traj, ode);
  res.csv = csv.str();
  return res;
}

Outcome diameter(const std::string& spec, const std::string& growth_desc, std::istream& in, std::ostream& out,
                 const Globals& g) {
  const LoadedChain loaded = load(spec, in, g);
  const MarkovChain& chain = loaded.chain();
  const ResistanceDiameter diam = resistance_diameter(chain, g.threads);
  Outcome res;
  res.spec_text = loaded.text;
  out << "resistance diameter: " << fmt(diam.value) << " (" << chain.label(diam.from) << " to "
      << chain.label(diam.to) << ")\n";
  out << "comparison dist <= sqrt(M1sup/2) rho: worst slack " << fmt(diam.comparison_slack) << "\n";
  res.body = {{"diameter", diam.value},
              {"from", chain.label(diam.from)},
              {"to", chain.label(diam.to)},
              {"converged", diam.all_converged},
              {"max_kkt_residual", diam.max_kkt_residual},
              {"comparison_slack", diam.comparison_slack}};
  bool ok = diam.comparison_slack >= -1e-9;
  if (const auto growth = growth_for(growth_desc, loaded.example)) {
    try {
      const double bound = diameter_bound(*growth);
      out << "bound from " << describe(*growth) << ": " << fmt(bound) << "\n";
      res.body["bound"] = bound;
      res.body["growth"] = describe(*growth);
      if (diam.value > bound * (1.0 + 1e-9)) {
        ok = false;
        out << "VIOLATED: diameter exceeds the bound\n";
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NonIntegrableGrowth) throw;
      out << "no diameter bound: " << e.what() << "\n";
      res.body["bound"] = nullptr;
    }
  } else {
    out << "no growth function available for a diameter bound\n";
    res.body["bound"] = nullptr;
  }
  std::ostringstream csv;
  csv << "from,to,resistance\n";
  for (std::size_t x = 0; x < chain.size(); ++x)
    for (std::size_t y = x + 1; y < chain.size(); ++y)
      csv << chain.label(x) << ',' << chain.label(y) << ','
          << fmt(diam.distances(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)), 17) << "\n";
  res.csv = csv.str();
  res.body["pass"] = ok;
  note_truncation(chain, out, res.body);
  if (!diam.all_converged) {
    out << "solver did not converge for every pair (values are lower bounds)\n";
    res.code = kNumericalError;
  } else if (!ok) {
    res.code = kMathFailure;
  }
  return res;
}

Outcome inequalities(const std::string& spec, const std::string& suite, const std::string& growth_desc,
                     std::size_t samples, std::optional<std::uint64_t> seed_flag, std::istream& in,
                     std::ostream& out, const Globals& g) {
  const LoadedChain loaded = load(spec, in, g);
  const MarkovChain& chain = loaded.chain();
  const auto growth = growth_for(growth_desc, loaded.example);
  if (!growth) throw Error(ErrorKind::InvalidInput, "no growth function: pass --growth");
  const std::uint64_t seed = resolve_seed(seed_flag);
  const auto n = static_cast<Eigen::Index>(chain.size());
  const std::vector<double> scales{0.1, 1.0, 3.0};

  std::map<std::string, InequalityReport> reports;
  std::ostringstream csv;
  csv << "suite,sample,worst_slack\n";
  const auto add = [&](const std::string& name, std::size_t i, const InequalityReport& r) {
    auto [it, inserted] = reports.try_emplace(name, r);
    if (!inserted) it->second.merge(r);
    csv << name << ',' << i << ',' << fmt(r.worst_slack, 17) << "\n";
  };

  std::stringstream parts(suite);
  std::string part;
  while (std::getline(parts, part, ',')) {
    if (part != "ei" && part != "ultra" && part != "lip" && part != "nash")
      throw Error(ErrorKind::InvalidInput, "unknown suite '" + part + "'");
    for (std::size_t i = 0; i < samples; ++i) {
      auto rng = sample_rng(seed, i);
      std::normal_distribution<double> normal;
      const double scale = scales[i % scales.size()];
      StateFunction f(n);
      for (Eigen::Index x = 0; x < n; ++x) f(x) = scale * normal(rng);
      if (part == "ei") {
        StateFunction density = f.array().exp().matrix();
        density /= integrate_pi(chain, density);
        add(part, i, ei_check(chain, density, *growth));
      } else if (part == "ultra") {
        for (double t : {0.01, 0.1, 1.0}) add(part, i, ultracontractivity_check(chain, f, *growth, t));
      } else if (part == "lip") {
        const double lip = lipschitz_seminorm(chain, f);
        if (lip == 0.0) continue;
        const StateFunction unit = f / lip;
        add(part, i, fisher_lipschitz_check(chain, unit, {-5.0, -2.0, -1.0, -0.5, 0.5, 1.0, 2.0, 5.0}));
        add(part, i, exp_integrability_check(chain, unit, *growth, {-5.0, -2.0, -1.0, -0.5, 0.5, 1.0, 2.0, 5.0}));
      } else {
        const auto* log_growth = std::get_if<LogGrowth>(&*growth);
        if (!log_growth) throw Error(ErrorKind::InvalidInput, "the Nash suite needs a log growth function");
        for (Eigen::Index x = 0; x < n; ++x)
          if (f(x) == 0.0) f(x) = scale;
        add(part, i,
            nash_check(chain, f, log_growth->n / 2.0, log_growth->kappa * log_growth->n, 1.0));
      }
    }
  }

  Outcome res;
  res.spec_text = loaded.text;
  res.seed = seed;
  res.body = json::object();
  res.body["growth"] = describe(*growth);
  bool ok = true;
  for (const auto& [name, report] : reports) {
    out << name << ": " << (report.pass ? "pass" : "FAIL") << ", worst slack " << fmt(report.worst_slack)
        << " over " << report.slacks.size() << " checks\n";
    res.body["suites"][name] = to_json(chain, report);
    ok = ok && report.pass;
  }
  res.body["pass"] = ok;
  note_truncation(chain, out, res.body);
  if (!ok) res.code = kMathFailure;
  res.csv = csv.str();
  return res;
}

Outcome example(const std::string& family, const std::vector<std::string>& raw, const std::string& emit,
                std::ostream& out) {
  ExampleParams params;
  for (const auto& item : raw) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::InvalidInput, "parameters are key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    std::vector<double> numbers;
    std::stringstream ss(value);
    std::string token;
    while (std::getline(ss, token, ',')) {
      try {
        std::size_t used = 0;
        numbers.push_back(std::stod(token, &used));
        if (used != token.size()) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        throw Error(ErrorKind::InvalidInput, "bad number '" + token + "' for " + key);
      }
    }
    if (numbers.empty()) throw Error(ErrorKind::InvalidInput, "missing value for " + key);
    if (key == "l") {
      params.weights = numbers;
    } else if (numbers.size() == 1) {
      params.values[key] = numbers.front();
    } else {
      throw Error(ErrorKind::InvalidInput, key + " takes a single value");
    }
  }
  const Example ex = make_example(family, params);
  Outcome res;
  res.spec_text = emit_family_spec(family, params);
  if (emit == "spec") {
    out << res.spec_text << "\n";
  } else if (emit == "chain") {
    out << emit_explicit_spec(ex.chain) << "\n";
  } else if (emit == "summary") {
    out << family << ": " << ex.chain.size() << " states\n";
    if (ex.certificate)
      out << "certificate: CD(" << fmt(ex.certificate->kappa) << ", " << describe(ex.certificate->F) << ")\n";
    else
      out << "no certificate\n";
    for (const auto& note : ex.notes) out << "note: " << note << "\n";
  } else {
    throw Error(ErrorKind::InvalidInput, "--emit must be spec, chain or summary");
  }
  res.body = {{"family", family}, {"states", ex.chain.size()}, {"notes", ex.notes}};
  if (ex.certificate)
    res.body["certificate"] = {{"kappa", ex.certificate->kappa}, {"cdfun", describe(ex.certificate->F)}};
  return res;
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Curvature-dimension checks for reversible Markov chains", "curvcheck"};
  app.require_subcommand(1);
  Globals globals;
  app.add_option("--json", globals.json_path, "Write the JSON report to this file");
  app.add_option("--csv", globals.csv_path, "Write plot-ready CSV to this file");
  app.add_option("--threads", globals.threads, "Worker threads (0 = available parallelism)");
  app.add_option("--tol", globals.tol, "Relative tolerance for measure identities")->check(CLI::PositiveNumber);
  app.set_version_flag("--version", CURVCHECK_VERSION);

  std::function<Outcome()> action;
  std::string command;
  const auto bind = [&](CLI::App* sub, std::string name, std::function<Outcome()> fn) {
    sub->fallthrough();
    sub->callback([&action, &command, name = std::move(name), fn = std::move(fn)] {
      command = name;
      action = fn;
    });
  };

  std::string spec;
  std::optional<std::uint64_t> seed;

  auto* chain_cmd = app.add_subcommand("chain", "Chain utilities")->require_subcommand(1);
  chain_cmd->fallthrough();
  auto* check_cmd = chain_cmd->add_subcommand("check", "Validate a chain and print local statistics");
  check_cmd->add_option("spec", spec, "Chain spec file, or - for stdin")->required();
  bind(check_cmd, "chain check", [&] { return chain_check(spec, in, out, globals); });

  std::string variant = "upsilon";
  std::string state;
  int starts = 8;
  auto* curv_cmd = app.add_subcommand("curvature", "Estimate the curvature constant kappa");
  curv_cmd->add_option("spec", spec)->required();
  curv_cmd->add_option("--variant", variant, "upsilon or be");
  curv_cmd->add_option("--state", state, "Single state label");
  curv_cmd->add_option("--seed", seed);
  curv_cmd->add_option("--starts", starts, "Random starts per scale")->check(CLI::PositiveNumber);
  bind(curv_cmd, "curvature", [&] { return curvature(spec, variant, state, seed, starts, in, out, globals); });

  double kappa = 0.0;
  std::string cdfun;
  std::size_t trials = 1000;
  auto* cd_cmd = app.add_subcommand("cd", "Curvature-dimension conditions")->require_subcommand(1);
  cd_cmd->fallthrough();
  auto* verify_cmd = cd_cmd->add_subcommand("verify", "Randomized falsification of CD(kappa, F)");
  verify_cmd->add_option("spec", spec)->required();
  verify_cmd->add_option("--kappa", kappa)->required();
  verify_cmd->add_option("--cdfun", cdfun, "power:n=..,delta=.. | nu:c,d[,scale=..][,out=..] | table:.. | zero")
      ->required();
  verify_cmd->add_option("--trials", trials)->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", seed);
  bind(verify_cmd, "cd verify", [&] { return cd_verify(spec, kappa, cdfun, trials, seed, in, out, globals); });

  std::string density;
  std::string grid = "geom:t0=1e-3,ratio=1.5,count=30";
  std::optional<double> ode_kappa;
  auto* decay_cmd = app.add_subcommand("entropy-decay", "Entropy trajectory and its differential inequality");
  decay_cmd->add_option("spec", spec)->required();
  decay_cmd->add_option("--density", density, "Density file, or - for stdin")->required();
  decay_cmd->add_option("--grid", grid, "geom:t0=..,ratio=..,count=.. or lin:a,b,n");
  decay_cmd->add_option("--kappa", ode_kappa);
  decay_cmd->add_option("--cdfun", cdfun);
  bind(decay_cmd, "entropy-decay",
       [&] { return entropy_decay(spec, density, grid, ode_kappa, cdfun, in, out, globals); });

  std::string growth;
  auto* diam_cmd = app.add_subcommand("diameter", "Resistance diameter and its bound");
  diam_cmd->add_option("spec", spec)->required();
  diam_cmd->add_option("--growth", growth, "log:n=..,kappa=.. | power:n=..,kappa=..,delta=.. | linear:c=..");
  bind(diam_cmd, "diameter", [&] { return diameter(spec, growth, in, out, globals); });

  std::string suite = "ei,ultra,lip,nash";
  std::size_t samples = 200;
  auto* ineq_cmd = app.add_subcommand("inequalities", "Entropy-information and derived inequalities");
  ineq_cmd->add_option("spec", spec)->required();
  ineq_cmd->add_option("--suite", suite);
  ineq_cmd->add_option("--growth", growth);
  ineq_cmd->add_option("--samples", samples)->check(CLI::PositiveNumber);
  ineq_cmd->add_option("--seed", seed);
  bind(ineq_cmd, "inequalities",
       [&] { return inequalities(spec, suite, growth, samples, seed, in, out, globals); });

  std::string family;
  std::vector<std::string> params;
  std::string emit = "summary";
  auto* ex_cmd = app.add_subcommand("example", "Built-in example chains");
  ex_cmd->add_option("family", family)->required();
  ex_cmd->add_option("params", params, "key=value parameters");
  ex_cmd->add_option("--emit", emit, "spec, chain or summary");
  bind(ex_cmd, "example", [&] { return example(family, params, emit, out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    Outcome res = action();
    if (!globals.json_path.empty())
      write_file(globals.json_path, make_report(command, res.spec_text, res.seed, res.body).dump(2) + "\n");
    if (!globals.csv_path.empty()) write_file(globals.csv_path, res.csv);
    return res.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_input_error(e.kind()) ? kInputError : kNumericalError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kNumericalError;
  }
}

}  // namespace curvcheck::cli
