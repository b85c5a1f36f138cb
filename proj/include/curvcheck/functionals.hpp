#pragma once

#include <Eigen/Dense>

#include "curvcheck/chain.hpp"

namespace curvcheck {

/// ∫ f dμ with μ = π·counting measure.
double integrate_pi(const MarkovChain& chain, const Eigen::Ref<const Eigen::VectorXd>& f);

/// ∫ f log f dμ - (∫ f dμ) log ∫ f dμ. Throws NonPositiveInput.
double entropy(const MarkovChain& chain, const Eigen::Ref<const Eigen::VectorXd>& f);

/// ½ Σ_{x,y} k(x,y) (f(y) - f(x)) (log f(y) - log f(x)) π(x). Throws NonPositiveInput.
double fisher_information(const MarkovChain& chain, const Eigen::Ref<const Eigen::VectorXd>& f);

/// ∫ f Ψ_Υ(log f) dμ; a second route to the Fisher information.
double fisher_via_psi(const MarkovChain& chain, const Eigen::Ref<const Eigen::VectorXd>& f);

/// ½ Σ_{x,y} k(x,y) (f(y) - f(x)) (g(y) - g(x)) π(x).
double dirichlet_form(const MarkovChain& chain, const Eigen::Ref<const Eigen::VectorXd>& f,
                      const Eigen::Ref<const Eigen::VectorXd>& g);

/// (∫ |f|^p dμ)^{1/p}; p = +inf gives the sup norm.
double lp_norm(const MarkovChain& chain, const Eigen::Ref<const Eigen::VectorXd>& f, double p);

}  // namespace curvcheck
