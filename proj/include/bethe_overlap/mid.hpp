#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "bethe_overlap/kernels.hpp"
#include "bethe_overlap/matrix.hpp"

namespace bethe_overlap {

/// Arguments of the modified Izergin determinant K^{(z)}_{n,m}(u|v).
struct MidInput {
  ParamSet u;  ///< size n
  ParamSet v;  ///< size m
  Scalar z;
  ModelConstant c = ModelConstant::unit();
  std::optional<ParamSet> eta;  ///< auxiliary parameters for the eta representations

  /// Validates distinctness and rejects u/v and u/eta coincidences.
  static MidInput make(ParamSet u, ParamSet v, Scalar z, ModelConstant c, std::optional<ParamSet> eta = std::nullopt);

  std::size_t n() const noexcept { return u.size(); }
  std::size_t m() const noexcept { return v.size(); }
};

/// det_m( -z delta_jk + f(u, v_j) f(v_j, v_j-bar) / h(v_j, v_k) ).
Scalar mid_direct(const MidInput& in);

/// (1-z)^{m-n} det_n( delta_jk f(u_j, v) - z f(u_j, u_j-bar) / h(u_j, u_k) ).
/// Throws PrefactorSingular at z = 1 when m < n.
Scalar mid_dual(const MidInput& in);

/// Representation with n auxiliary parameters eta (|eta| = n).
Scalar mid_eta_n(const MidInput& in);

/// Representation with m auxiliary parameters eta (|eta| = m).
Scalar mid_eta_m(const MidInput& in);

enum class MidRepresentation { direct, dual };

/// The MID with c -> -c, through the chosen representation.
Scalar mid_conjugate(const MidInput& in, MidRepresentation representation = MidRepresentation::direct);

/// Shorthand for mid_direct without construction-time validation. Used
/// inside partition sums where coincidences surface as PoleError anyway.
Scalar mid(const ParamSet& u, const ParamSet& v, const Scalar& z, const ModelConstant& c);
Scalar mid_bar(const ParamSet& u, const ParamSet& v, const Scalar& z, const ModelConstant& c);

/// Two independently computed sides of an identity.
struct IdentityPair {
  Scalar lhs;
  Scalar rhs;
  /// Sum of the moduli of the terms behind lhs; sets the scale of float comparisons.
  Real scale = 0;
  bool holds_exactly() const { return lhs == rhs; }
};

/// G_jk as an explicit sum over l and as the closed form h(u_j, eta_k-bar)/h(u_j, u).
IdentityPair sum_G_closed(const ParamSet& u, const ParamSet& eta, std::size_t j, std::size_t k, const ModelConstant& c);

enum class CauchyKind {
  g_matrix,          ///< W_jk = g(u_j, u_j-bar)/g(u_j, eta_k-bar); det W = Delta(u)/Delta(eta)
  inverse_h_matrix,  ///< det h(u_j, eta_k-bar) = 1/(Delta(eta) Delta'(u))
};

IdentityPair cauchy_det(const ParamSet& u, const ParamSet& eta, CauchyKind kind, const ModelConstant& c);

enum class BilinearVariant {
  ml1,  ///< sum z2^{l_I} K^{(z1)}(u|xi_I) K^{(z2)}(v|xi_II) f(xi_II,xi_I) f(u,xi_II) = K^{(z1 z2)}({u,v}|xi)
  ml2,  ///< sum (-z2/z1)^{l_I} Kbar^{(z1)}(u|xi_I) K^{(z2)}(v|xi_II) f(xi_II,xi_I) = f(xi,u) K^{(z2/z1)}({u-c,v}|xi)
  ml3,  ///< ml2 at z1 = z2 = 1
};

IdentityPair bilinear_sum(const ParamSet& xi, const ParamSet& u, const ParamSet& v, const Scalar& z1, const Scalar& z2,
                          BilinearVariant variant, const ModelConstant& c);

using Evaluator = std::function<Scalar(const Scalar&)>;

/// Column families of the determinant lemma for a given eta set:
///   F1_k(u) = phi1(u) (z/g(eta_k-bar,u) - h(eta_k-bar,u)) + phi2(u) (1/g(u,eta_k-bar) - z h(u,eta_k-bar))
///   F2_k(u) = (-1)^{|eta|-1} phi1(u)/g(u,eta_k-bar) - phi2(u) h(u,eta_k-bar)
Scalar lemma_column_first(const Scalar& u, const ParamSet& eta, std::size_t k, const Scalar& z, const Evaluator& phi1,
                          const Evaluator& phi2, const Kernels& kr);
Scalar lemma_column_second(const Scalar& u, const ParamSet& eta, std::size_t k, const Evaluator& phi1,
                           const Evaluator& phi2, const Kernels& kr);

struct LemmaDeterminants {
  Scalar det_first;   ///< det F^(01)
  Scalar det_second;  ///< det F^(02)
  std::size_t free_columns = 0;  ///< N - n, the exponent of (z - 1)
};

/// Builds the N x N matrices whose first n columns come from `fixed_columns`
/// (n = fixed_columns.size()) and whose remaining N - n columns are the F1
/// resp. F2 families over eta (|eta| = N - n). det F^(01) = (z-1)^{N-n} det F^(02).
LemmaDeterminants detlemma_matrices(const ParamSet& u, const ParamSet& eta, const Evaluator& phi1, const Evaluator& phi2,
                                    const std::vector<Evaluator>& fixed_columns, const Scalar& z, const ModelConstant& c);

/// lhs = sum over partitions of phi1(u_I) phi2(u_II) f(u_II,u_I) H({u_I - c, u_II}),
/// rhs = Delta(u) det( phi1(u_j) Phi_k(u_j - c) + phi2(u_j) Phi_k(u_j) ),
/// where H(w) = Delta(w) det Phi_k(w_j).
IdentityPair sum_formula(const ParamSet& u, const std::vector<Evaluator>& columns, const Evaluator& phi1,
                         const Evaluator& phi2, const ModelConstant& c);

/// Delta'(u) Delta(eta) det( 1/g(u_j, eta_k-bar) - z h(u_j, eta_k-bar) ), which equals (1 - z)^n.
Scalar corollary_determinant(const ParamSet& u, const ParamSet& eta, const Scalar& z, const ModelConstant& c);

/// (1 - z)^k, rejecting k < 0 at z = 1.
Scalar one_minus_z_power(const Scalar& z, long k);

}  // namespace bethe_overlap
