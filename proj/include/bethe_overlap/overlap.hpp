#pragma once

#include "bethe_overlap/chain.hpp"
#include "bethe_overlap/mid.hpp"

namespace bethe_overlap {

/// Data of the overlap <0| t21(v) nu12(u) |0> with |v| = n, |u| = N.
struct OverlapInput {
  WeightPair weights;
  TwistGeneral twist2;
  Scalar alpha;        ///< diagonal twist of the dual vector
  ParamSet v;          ///< size n
  ParamSet u;          ///< size N
  ParamSet eta_free;   ///< size N - n, used by the determinant forms
  ModelConstant c = ModelConstant::unit();
  /// Float mode: relative residual accepted as on-shell.
  Real onshell_tol = Real(1e-27);

  /// Validates modes and distinctness; fills eta_free with default_eta when empty and n < N.
  static OverlapInput make(WeightPair weights, TwistGeneral twist2, Scalar alpha, ParamSet v, ParamSet u,
                           ModelConstant c, ParamSet eta_free = {});

  std::size_t n() const noexcept { return v.size(); }
  std::size_t N() const noexcept { return u.size(); }
};

/// Rationals N+2, N+3, ... skipping every element of `avoid`.
ParamSet default_eta(std::size_t count, std::size_t N, const ParamSet& avoid, const Scalar& like);

/// Throws NotOnShell unless v solves the diag equations with twist alpha.
void require_onshell(const OverlapInput& in);
/// Throws ConstraintViolated unless alpha = -rho2/rho1.
void require_constraint(const OverlapInput& in);

/// Partition-sum formula valid for arbitrary v and u. When `magnitude` is
/// given it receives the sum of the moduli of all terms, prefactor included.
Scalar overlap_sum_offshell(const OverlapInput& in, Real* magnitude = nullptr);

/// With on-shell v: the form with the inner sum over v-partitions
/// (assume_constraint = false) or, under alpha = -rho2/rho1, the single-MID
/// form with K^{(z)}_{N,n}({u_I - c, u_II}|v); z = 1 is the overlap itself.
Scalar overlap_sum_onshell(const OverlapInput& in, bool assume_constraint);
Scalar overlap_sum_onshell(const OverlapInput& in, bool assume_constraint, const Scalar& z);

/// Determinant with the z-deformed matrix over |eta| = N auxiliary parameters (z != 1).
Scalar overlap_det_z(const OverlapInput& in, const Scalar& z, const ParamSet& eta);
/// (1 - z)^{n - N} overlap_det_z.
Scalar overlap_det_z_scaled(const OverlapInput& in, const Scalar& z, const ParamSet& eta);

/// The z -> 1 determinant representation, using in.eta_free.
Scalar overlap_det(const OverlapInput& in);

/// alpha = 1 and rho1 = -rho2: the form with the V_j-weighted matrix.
/// u must satisfy the reduced Bethe system. When `magnitude` is given it
/// receives the Hadamard bound of the determinant times the prefactor modulus.
Scalar overlap_det_reduced(const OverlapInput& in, Real* magnitude = nullptr);

struct ValueAndDerivative {
  Scalar value;
  Scalar derivative;
};

ValueAndDerivative eigenvalue_diag_with_derivative(const WeightPair& weights, const Scalar& alpha, const Scalar& z,
                                                   const ParamSet& roots, const ModelConstant& c);
ValueAndDerivative eigenvalue_general_with_derivative(const WeightPair& weights, const TwistGeneral& twist,
                                                      const Scalar& z, const ParamSet& roots, const ModelConstant& c);

/// d/dz log(Lambda1(z|v) / Lambda2(z|u)), analytic.
Scalar log_ratio_derivative(const WeightPair& weights, const Scalar& alpha, const TwistGeneral& twist2,
                            const ParamSet& v_roots, const ParamSet& u_roots, const Scalar& z, const ModelConstant& c);

/// |2c d/dz log(Lambda1/Lambda2)|^2 at z = 0 times |overlap|^2. Excludes 2pi/hbar and the density of states.
Scalar rate_prefactor(const WeightPair& weights, const Scalar& alpha, const TwistGeneral& twist2,
                      const ParamSet& v_roots, const ParamSet& u_roots, const Scalar& overlap_value,
                      const ModelConstant& c);

}  // namespace bethe_overlap
