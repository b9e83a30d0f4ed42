#pragma once

#include <array>
#include <functional>
#include <optional>
#include <utility>

#include "bethe_overlap/kernels.hpp"
#include "bethe_overlap/matrix.hpp"

namespace bethe_overlap {

inline constexpr std::size_t kMaxExactSites = 10;
inline constexpr std::size_t kMaxFloatSites = 12;

/// Inhomogeneous XXX spin-1/2 chain of L sites.
struct SpinChainModel {
  std::size_t L = 0;
  ModelConstant c = ModelConstant::unit();
  ParamSet theta;
  bool allow_coincident_theta = false;

  static SpinChainModel make(ParamSet theta, ModelConstant c, bool allow_coincident_theta = false);
  static SpinChainModel homogeneous(std::size_t L, ModelConstant c);

  ScalarMode mode() const noexcept { return c.mode(); }
  std::size_t dim() const noexcept { return std::size_t{1} << L; }
};

using OperatorMatrix = Matrix;
/// t_kl(u) stored as blocks[k-1][l-1].
using Monodromy = std::array<std::array<OperatorMatrix, 2>, 2>;
/// A 2x2 matrix of numbers (twists and their factors).
using Numeric2x2 = std::array<std::array<Scalar, 2>, 2>;

/// Vacuum eigenvalues lambda1, lambda2 with their derivatives.
struct WeightPair {
  std::function<Scalar(const Scalar&)> lambda1;
  std::function<Scalar(const Scalar&)> lambda2;
  std::function<Scalar(const Scalar&)> dlambda1;
  std::function<Scalar(const Scalar&)> dlambda2;

  Scalar lambda1_of(const ParamSet& s, const Scalar& one) const;
  Scalar lambda2_of(const ParamSet& s, const Scalar& one) const;
};

/// lambda1(u) = prod h(u, theta_k), lambda2(u) = prod (u - theta_k)/c.
WeightPair spin_half_weights(const SpinChainModel& model);

struct TwistDiag {
  Scalar alpha;
  static TwistDiag make(Scalar alpha);
};

/// General twist K = [[kappa_tilde, kappa_plus], [kappa_minus, kappa]] with its
/// decomposition K = mu * Bbar * D * Abar.
struct TwistGeneral {
  Scalar kappa_tilde;
  Scalar kappa_plus;
  Scalar kappa_minus;
  Scalar kappa;
  Scalar rho1;
  Scalar rho2;
  Scalar mu;

  /// K given in full plus rho1; rho2 is solved from the constraint. Rejects rho1 = kappa_tilde.
  static TwistGeneral make(Scalar kappa_tilde, Scalar kappa_plus, Scalar kappa_minus, Scalar kappa, Scalar rho1);
  /// Both rhos given; kappa_plus is solved from the constraint.
  static TwistGeneral from_rhos(Scalar kappa_tilde, Scalar kappa_minus, Scalar kappa, Scalar rho1, Scalar rho2);

  Numeric2x2 K() const;
  Numeric2x2 A_bar() const;
  Numeric2x2 B_bar() const;
  Numeric2x2 D() const;
  /// rho1 rho2 - (kappa rho1 + kappa_tilde rho2) + kappa_plus kappa_minus.
  Scalar constraint_defect() const;
};

Numeric2x2 multiply(const Numeric2x2& a, const Numeric2x2& b);

/// T(u) = L_L(u - theta_L) ... L_1(u - theta_1), L(x) = (x/c) 1 + P.
Monodromy build_monodromy(const SpinChainModel& model, const Scalar& u);

/// The all-up basis vector.
Vector vacuum(const SpinChainModel& model);

Vector bethe_vector(const SpinChainModel& model, const ParamSet& u);
Vector dual_bethe_vector(const SpinChainModel& model, const ParamSet& u);

/// nu_kl(u) from the explicit linear combinations of t_ij(u); k, l in {1, 2}.
OperatorMatrix modified_operator(const SpinChainModel& model, const TwistGeneral& twist, int k, int l, const Scalar& u);
/// mu * Abar * T(u) * Bbar, an independent route to the same four operators.
Monodromy modified_monodromy_product(const SpinChainModel& model, const TwistGeneral& twist, const Scalar& u);

Vector modified_bethe_vector(const SpinChainModel& model, const TwistGeneral& twist, const ParamSet& u);
Vector dual_modified_bethe_vector(const SpinChainModel& model, const TwistGeneral& twist, const ParamSet& u);

OperatorMatrix transfer_diag(const SpinChainModel& model, const Scalar& alpha, const Scalar& u);
/// tr(K T(u)).
OperatorMatrix transfer_general(const SpinChainModel& model, const TwistGeneral& twist, const Scalar& u);
/// tr(D nu(u)), the second form of the same operator.
OperatorMatrix transfer_general_via_modified(const SpinChainModel& model, const TwistGeneral& twist, const Scalar& u);

Scalar eigenvalue_diag(const WeightPair& weights, const Scalar& alpha, const Scalar& v, const ParamSet& u,
                       const ModelConstant& c);
Scalar eigenvalue_general(const WeightPair& weights, const TwistGeneral& twist, const Scalar& v, const ParamSet& u,
                          const ModelConstant& c);

/// <0| t21(v_1)...t21(v_n) nu12(u_1)...nu12(u_N) |0> by explicit matrix products.
Scalar brute_overlap(const SpinChainModel& model, const TwistGeneral& twist, const ParamSet& v, const ParamSet& u);

/// R12(u-v) T1(u) T2(v) - T2(v) T1(u) R12(u-v) on C^2 (x) C^2 (x) H.
Matrix rtt_residual(const SpinChainModel& model, const Scalar& u, const Scalar& v);
/// The two sides R T1 T2 and T2 T1 R.
std::pair<Matrix, Matrix> rtt_sides(const SpinChainModel& model, const Scalar& u, const Scalar& v);

/// H = 2c t'(0) t(0)^{-1} with t'(0) from exact Lagrange differentiation.
OperatorMatrix hamiltonian_at_zero(const SpinChainModel& model, const std::function<OperatorMatrix(const Scalar&)>& transfer);
OperatorMatrix hamiltonian_at_zero(const SpinChainModel& model, const Scalar& alpha);
OperatorMatrix hamiltonian_at_zero(const SpinChainModel& model, const TwistGeneral& twist);

/// ||t v - lambda v|| / ||v|| (max norms).
Real eigen_residual(const OperatorMatrix& t, const Vector& v, const Scalar& lambda);

}  // namespace bethe_overlap
