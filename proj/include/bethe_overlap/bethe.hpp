#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bethe_overlap/chain.hpp"

namespace bethe_overlap {

enum class BetheKind {
  diag,      ///< lambda1(u_j) f(u_j-bar, u_j) = alpha lambda2(u_j) f(u_j, u_j-bar)
  modified,  ///< inhomogeneous equations of the general twist
  reduced,   ///< the rho1 = -rho2 system written through the rescaled weights
};

struct BetheSystem {
  BetheKind kind = BetheKind::diag;
  WeightPair weights;
  Scalar alpha;                       ///< diag only
  std::optional<TwistGeneral> twist;  ///< modified and reduced
  std::size_t root_count = 0;
  ModelConstant c = ModelConstant::unit();

  static BetheSystem diag(WeightPair weights, Scalar alpha, std::size_t root_count, ModelConstant c);
  static BetheSystem modified(WeightPair weights, TwistGeneral twist, std::size_t root_count, ModelConstant c);
  /// Requires rho1 = -rho2.
  static BetheSystem reduced(WeightPair weights, TwistGeneral twist, std::size_t root_count, ModelConstant c);

  ScalarMode mode() const noexcept { return c.mode(); }
};

/// (kappa + rho)/(kappa_tilde - rho): the diagonal twist the rho1 = -rho2
/// system is equivalent to, up to the overall factor kappa_tilde - rho.
Scalar effective_alpha(const TwistGeneral& twist);
/// The diag system with effective_alpha; same roots as a reduced/modified system with rho1 = -rho2.
BetheSystem diag_equivalent(const BetheSystem& sys);

struct RootSet {
  ParamSet roots;
  Real residual_norm = 0;
  int iterations = 0;
  bool converged = false;
  std::string message;
};

/// Component j is the defect of equation j. Throws PoleError on coincident roots.
Vector residual(const BetheSystem& sys, const ParamSet& roots);

/// The signed terms whose sum is residual component j (used for scaling).
std::vector<Vector> residual_terms(const BetheSystem& sys, const ParamSet& roots);

/// max_j |r_j| / sum_t |term_{j,t}|.
Real residual_norm(const BetheSystem& sys, const ParamSet& roots);

/// Damped Newton with a central-difference Jacobian. Float mode only.
/// Returns the best iterate with converged = false when it stalls.
RootSet solve_newton(const BetheSystem& sys, const ParamSet& initial, const Real& tol, int max_iter);

struct ContinuationOptions {
  double t_start = 1e-8;
  int steps = 80;
  double step_tol = 1e-20;
  int step_max_iter = 60;
  /// Roots beyond this modulus count as escaped to infinity.
  double escape_radius = 1e4;
};

/// Follows a diag system from alpha ~ 0 (roots near the given start points,
/// e.g. theta_k - c) to its target alpha, then polishes at `tol`.
RootSet solve_by_continuation(const BetheSystem& sys, const ParamSet& start, const Real& tol, int max_iter,
                              const ContinuationOptions& options = {});

/// Tries every size-`count` subset of `anchors` shifted by -c as continuation
/// start; returns the first converged root set. Reduced systems are continued
/// through their diag equivalent and polished in their own form.
RootSet solve_from_anchors(const BetheSystem& sys, const ParamSet& anchors, const Real& tol, int max_iter,
                           const ContinuationOptions& options = {});

/// Symmetric perturbations of -c/2 for the homogeneous diag case.
ParamSet default_initial_guess(const BetheSystem& sys, unsigned bits);

/// alpha = lambda1(v)/lambda2(v): makes {v} an exact one-root solution.
Scalar one_magnon_twist(const WeightPair& weights, const Scalar& v);

}  // namespace bethe_overlap
