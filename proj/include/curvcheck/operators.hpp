#pragma once

#include <functional>
#include <string>
#include <variant>

#include <Eigen/Dense>

#include "curvcheck/chain.hpp"
#include "curvcheck/upsilon.hpp"

namespace curvcheck {

// ---------------------------------------------------------------------------
// Scalar kernels H used by Ψ_H, B_H and Ψ_{2,H}.

struct UpsilonKernel {};

/// H(r) = r^2. Γ is Ψ_H / 2 and Γ₂ is Ψ_{2,H} / 2 for this kernel.
struct SquareKernel {};

/// H(r) = out_scale * ν_{c,d}(r / arg_scale).
struct NuKernel {
  double c = 0.0;
  double d = 0.0;
  double arg_scale = 1.0;
  double out_scale = 1.0;
};

struct CustomKernel {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  std::string name = "custom";
};

using ScalarKernel = std::variant<UpsilonKernel, SquareKernel, NuKernel, CustomKernel>;

double kernel_value(const ScalarKernel& kernel, double r);
double kernel_derivative(const ScalarKernel& kernel, double r);
std::string kernel_name(const ScalarKernel& kernel);

struct ConvexityScan {
  double min_second_derivative;
  double argmin;
};

/// Minimum of ν''_{c,d} over `points` equally spaced nodes of [lo, hi].
ConvexityScan convexity_scan(double c, double d, double lo, double hi, int points = 4001);

// ---------------------------------------------------------------------------
// Operators on state functions. All sums run over the positive-rate neighbors
// only, using differences f(y) - f(x), so constants map exactly to zero.

/// (Lf)(x) = Σ_y k(x,y) (f(y) - f(x)).
StateFunction generator_apply(const MarkovChain& chain, const Eigen::Ref<const Eigen::VectorXd>& f);

/// Ψ_H(f)(x) = Σ_y k(x,y) H(f(y) - f(x)).
StateFunction psi(const MarkovChain& chain, const Eigen::Ref<const Eigen::VectorXd>& f,
                  const ScalarKernel& kernel);

/// B_H(f,g)(x) = Σ_y k(x,y) H(f(y) - f(x)) (g(y) - g(x)).
StateFunction b_operator(const MarkovChain& chain, const Eigen::Ref<const Eigen::VectorXd>& f,
                         const Eigen::Ref<const Eigen::VectorXd>& g, const ScalarKernel& kernel);

/// Ψ_{2,H}(f) = ½ (L Ψ_H(f) - B_{H'}(f, Lf)).
StateFunction psi2(const MarkovChain& chain, const Eigen::Ref<const Eigen::VectorXd>& f,
                   const ScalarKernel& kernel);

/// Ψ_{2,H}(f) at a single state; touches only the 2-ball of x.
double psi2_at(const MarkovChain& chain, const Eigen::Ref<const Eigen::VectorXd>& f,
               const ScalarKernel& kernel, std::size_t x);
double psi_at(const MarkovChain& chain, const Eigen::Ref<const Eigen::VectorXd>& f,
              const ScalarKernel& kernel, std::size_t x);
double generator_at(const MarkovChain& chain, const Eigen::Ref<const Eigen::VectorXd>& f,
                    std::size_t x);

/// Ψ_{2,Υ}(f) from the three-sum representation formula (halved). Independent
/// of psi2(); used as a cross-check path.
StateFunction psi2_upsilon_rep(const MarkovChain& chain, const Eigen::Ref<const Eigen::VectorXd>& f);
double psi2_upsilon_rep_at(const MarkovChain& chain, const Eigen::Ref<const Eigen::VectorXd>& f,
                           std::size_t x);

/// Γ(f) = ½ Σ_y k(x,y) (f(y) - f(x))^2.
StateFunction gamma_op(const MarkovChain& chain, const Eigen::Ref<const Eigen::VectorXd>& f);
/// Γ₂(f) = ½ L Γ(f) - Γ(f, Lf).
StateFunction gamma2_op(const MarkovChain& chain, const Eigen::Ref<const Eigen::VectorXd>& f);

/// L(log f) - Lf / f + Ψ_Υ(log f); identically zero for positive f.
/// Throws NonPositiveInput.
StateFunction chain_rule_residual(const MarkovChain& chain,
                                  const Eigen::Ref<const Eigen::VectorXd>& f);

}  // namespace curvcheck
