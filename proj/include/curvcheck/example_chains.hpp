#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "curvcheck/cd.hpp"
#include "curvcheck/cd_function.hpp"
#include "curvcheck/chain.hpp"

namespace curvcheck {

/// A (κ, F) pair for which the chain satisfies CD_Υ(κ, F).
struct Certificate {
  double kappa = 0.0;
  CDFunction F;
};

struct ExampleParams {
  std::map<std::string, double> values;
  std::vector<double> weights;  // the vector l of weighted_complete

  double get(const std::string& key, double fallback) const;
};

struct Example {
  std::string family;
  ExampleParams params;
  MarkovChain chain;
  std::optional<Certificate> certificate;
  std::vector<std::string> notes;
};

MarkovChain two_point_chain(double a, double b);
MarkovChain complete_chain(int n);
/// k(x, y) = l(y) for x ≠ y.
MarkovChain weighted_complete_chain(const std::vector<double>& l);
/// Vertices are d-bit strings, most significant bit first; index = integer value.
MarkovChain hypercube_chain(int d);
/// Birth rate λ, death rate x; truncated at `cutoff`.
MarkovChain poisson_chain(double lambda, int cutoff);
/// Unit-rate path 0 - 1 - ... - (n-1).
MarkovChain path_chain(int n);

/// Families: two_point(a, b), complete(n, alpha), weighted_complete(l, alpha,
/// delta), hypercube(d), birth_death(lambda, cutoff), path(n). Throws BadParams
/// for out-of-range parameters and InvalidInput for an unknown family.
Example make_example(const std::string& family, const ExampleParams& params);

struct PoissonDensity {
  StateFunction f;
  double renormalization = 1.0;  // ∫ f_k dμ over the truncated chain before rescaling
  double tail_mass = 0.0;
};

/// f_k(x) = e^{kx - λ(e^k - 1)} on {0..cutoff}, rescaled to a density for the
/// truncated Poisson measure. Throws TruncationInsufficient when the tilted law
/// Poisson(λe^k) puts more than 1e-8 beyond the cutoff.
PoissonDensity poisson_test_function(double lambda, double k, int cutoff);

/// η_i(u) = u with bit i flipped, on every closed 1-ball of Q_d.
EtaMaps hypercube_eta_maps(int d);

}  // namespace curvcheck
