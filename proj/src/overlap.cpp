#include "bethe_overlap/overlap.hpp"

#include "bethe_overlap/bethe.hpp"
#include "bethe_overlap/partitions.hpp"

namespace bethe_overlap {

namespace {

void require_nonzero_rhos(const TwistGeneral& tw) {
  if (tw.rho1.is_zero() || tw.rho2.is_zero()) throw DegenerateTwist("overlap formulas need rho1, rho2 != 0");
}

bool near_zero(const Scalar& defect, const Real& scale, const Real& tol) {
  if (defect.is_exact()) return defect.is_zero();
  return defect.modulus() <= tol * (scale == 0 ? Real(1) : scale);
}

Scalar lambda_hat1(const OverlapInput& in, const Scalar& x) {
  return in.twist2.rho1 / in.twist2.kappa_minus * in.weights.lambda1(x);
}

Scalar lambda_hat2(const OverlapInput& in, const Scalar& x) {
  return in.twist2.rho2 / in.twist2.kappa_minus * in.weights.lambda2(x);
}

// u with the elements of part I shifted by -c, positions kept.
ParamSet shifted_merge(const ParamSet& u, const Bipartition& b, const Scalar& c) {
  std::vector<Scalar> w;
  w.reserve(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) w.push_back(b.in_part_I(j) ? u[j] - c : u[j]);
  return ParamSet(std::move(w), u.label());
}

// Sum over partitions of u of (rho2/rho1)^{|u_II|} lambda2(u_II) lambda1(u_I) f(u_II, u_I) * inner(b).
Scalar outer_u_sum(const OverlapInput& in, const Kernels& kr, const std::function<Scalar(const Bipartition&)>& inner) {
  const Scalar ratio = in.twist2.rho2 / in.twist2.rho1;
  return partition_sum(
      in.u,
      [&](const Bipartition& b) {
        return ratio.pow(static_cast<long>(b.part_II.size())) * in.weights.lambda2_of(b.part_II, kr.one()) *
               in.weights.lambda1_of(b.part_I, kr.one()) * kr.f(b.part_II, b.part_I) * inner(b);
      },
      false, kr.zero());
}

struct ValueDerivPair {
  Scalar value;
  Scalar derivative;
};

// Product of factors given their values and derivatives (product rule, no division).
ValueDerivPair product_rule(const std::vector<ValueDerivPair>& factors, const Scalar& one) {
  Scalar value = one;
  Scalar derivative = one.zero_like();
  for (const auto& f : factors) {
    derivative = derivative * f.value + value * f.derivative;
    value *= f.value;
  }
  return {value, derivative};
}

// c1 lambda1 f(roots, z) + c2 lambda2 f(z, roots) + cg lambda1 lambda2 g(z, roots) and its z-derivative.
ValueAndDerivative eigen_pieces(const WeightPair& w, const Scalar& c1, const Scalar& c2, const Scalar& cg,
                                const Scalar& z, const ParamSet& roots, const ModelConstant& c) {
  const Kernels kr(c);
  const Scalar cc = kr.c();
  const Scalar one = kr.one();
  std::vector<ValueDerivPair> f_left;
  std::vector<ValueDerivPair> f_right;
  std::vector<ValueDerivPair> g_right;
  for (const auto& x : roots) {
    const Scalar d = x - z;
    if (d.is_zero()) throw PoleError("eigenvalue evaluated at a Bethe root");
    const Scalar dd = cc / (d * d);
    f_left.push_back({kr.f(x, z), dd});
    f_right.push_back({kr.f(z, x), -dd});
    g_right.push_back({kr.g(z, x), -dd});
  }
  const ValueDerivPair fl = product_rule(f_left, one);
  const ValueDerivPair fr = product_rule(f_right, one);
  const Scalar l1 = w.lambda1(z);
  const Scalar l2 = w.lambda2(z);
  const Scalar dl1 = w.dlambda1(z);
  const Scalar dl2 = w.dlambda2(z);
  Scalar value = c1 * (l1 * fl.value) + c2 * (l2 * fr.value);
  Scalar derivative = c1 * (dl1 * fl.value + l1 * fl.derivative) + c2 * (dl2 * fr.value + l2 * fr.derivative);
  if (!cg.is_zero()) {
    const ValueDerivPair gr = product_rule(g_right, one);
    value += cg * l1 * l2 * gr.value;
    derivative += cg * ((dl1 * l2 + l1 * dl2) * gr.value + l1 * l2 * gr.derivative);
  }
  return {value, derivative};
}

}  // namespace

ParamSet default_eta(std::size_t count, std::size_t N, const ParamSet& avoid, const Scalar& like) {
  std::vector<Scalar> out;
  long next = static_cast<long>(N) + 2;
  while (out.size() < count) {
    const Scalar candidate = like.like(next++);
    bool clash = false;
    for (const auto& a : avoid) clash = clash || a == candidate;
    if (!clash) out.push_back(candidate);
  }
  return ParamSet(std::move(out), "eta");
}

OverlapInput OverlapInput::make(WeightPair weights, TwistGeneral twist2, Scalar alpha, ParamSet v, ParamSet u,
                                ModelConstant c, ParamSet eta_free) {
  const ScalarMode mode = c.mode();
  if (alpha.mode() != mode || twist2.mu.mode() != mode) throw ModeMismatch("overlap input mixes modes");
  for (const auto* s : {&v, &u, &eta_free}) {
    for (const auto& x : *s) {
      if (x.mode() != mode) throw ModeMismatch("overlap input mixes modes");
    }
  }
  if (!v.pairwise_distinct() || !u.pairwise_distinct()) throw PoleError("overlap roots must be pairwise distinct");
  if (u.intersects(v)) throw PoleError("u and v share an element");
  const std::size_t free = u.size() > v.size() ? u.size() - v.size() : 0;
  if (eta_free.empty() && free > 0) {
    eta_free = default_eta(free, u.size(), u.concat(v), c.value());
  }
  if (u.size() >= v.size() && eta_free.size() != free) throw InvalidArgument("eta_free must have size N - n");
  if (!eta_free.pairwise_distinct()) throw PoleError("eta_free must be pairwise distinct");
  if (eta_free.intersects(u) || eta_free.intersects(v)) throw PoleError("eta_free must avoid u and v");
  OverlapInput in;
  in.weights = std::move(weights);
  in.twist2 = std::move(twist2);
  in.alpha = std::move(alpha);
  in.v = std::move(v);
  in.u = std::move(u);
  in.eta_free = std::move(eta_free);
  in.c = std::move(c);
  return in;
}

void require_onshell(const OverlapInput& in) {
  if (in.v.empty()) return;
  const BetheSystem sys = BetheSystem::diag(in.weights, in.alpha, in.n(), in.c);
  if (in.c.mode() == ScalarMode::exact) {
    for (const auto& r : residual(sys, in.v)) {
      if (!r.is_zero()) throw NotOnShell("v does not satisfy the twisted Bethe equations (exact residual nonzero)");
    }
    return;
  }
  PrecisionScope scope(in.c.value().precision_bits());
  const Real norm = residual_norm(sys, in.v);
  if (norm > in.onshell_tol) {
    throw NotOnShell("v does not satisfy the twisted Bethe equations (relative residual " +
                     norm.str(6, std::ios_base::scientific) + ")");
  }
}

void require_constraint(const OverlapInput& in) {
  const Scalar defect = in.alpha * in.twist2.rho1 + in.twist2.rho2;
  const Real scale = (in.alpha * in.twist2.rho1).modulus() + in.twist2.rho2.modulus();
  if (!near_zero(defect, scale, in.onshell_tol)) throw ConstraintViolated("alpha != -rho2/rho1");
}

Scalar overlap_sum_offshell(const OverlapInput& in, Real* magnitude) {
  const Kernels kr(in.c);
  if (in.n() > in.N()) return kr.zero();
  require_nonzero_rhos(in.twist2);
  const TwistGeneral& tw = in.twist2;
  const Scalar ratio = tw.rho1 / tw.rho2;
  Real terms = 0;
  const Scalar sum = partition_sum(
      in.u,
      [&](const Bipartition& bu) {
        return partition_sum(
            in.v,
            [&](const Bipartition& bv) {
              const long power = static_cast<long>(bv.part_II.size()) - static_cast<long>(bu.part_II.size());
              return ratio.pow(power) * in.weights.lambda2_of(bv.part_I, kr.one()) *
                     in.weights.lambda2_of(bu.part_II, kr.one()) * in.weights.lambda1_of(bv.part_II, kr.one()) *
                     in.weights.lambda1_of(bu.part_I, kr.one()) * kr.f(bv.part_I, bv.part_II) *
                     kr.f(bu.part_II, bu.part_I) * mid(bu.part_II, bv.part_II, kr.one(), in.c) *
                     mid_bar(bu.part_I, bv.part_I, kr.one(), in.c);
            },
            false, kr.zero(), std::nullopt, &terms);
      },
      false, kr.zero());
  const long excess = static_cast<long>(in.N()) - static_cast<long>(in.n());
  const Scalar prefactor = tw.mu.pow(static_cast<long>(in.N())) * (tw.rho1 / tw.kappa_minus).pow(excess);
  if (magnitude) *magnitude = prefactor.modulus() * terms;
  return prefactor * sum;
}

Scalar overlap_sum_onshell(const OverlapInput& in, bool assume_constraint) {
  return overlap_sum_onshell(in, assume_constraint, in.c.value().one_like());
}

Scalar overlap_sum_onshell(const OverlapInput& in, bool assume_constraint, const Scalar& z) {
  const Kernels kr(in.c);
  if (in.n() > in.N()) return kr.zero();
  require_nonzero_rhos(in.twist2);
  require_onshell(in);
  const TwistGeneral& tw = in.twist2;
  const long excess = static_cast<long>(in.N()) - static_cast<long>(in.n());
  const Scalar prefactor = tw.mu.pow(static_cast<long>(in.N())) * (tw.rho1 / tw.kappa_minus).pow(excess) *
                           in.weights.lambda2_of(in.v, kr.one());
  if (!assume_constraint) {
    if (z != kr.one()) throw InvalidArgument("the z-deformation applies to the constrained form only");
    const Scalar weight = in.alpha * tw.rho1 / tw.rho2;
    const Scalar sum = outer_u_sum(in, kr, [&](const Bipartition& bu) {
      return partition_sum(
          in.v,
          [&](const Bipartition& bv) {
            return weight.pow(static_cast<long>(bv.part_II.size())) * kr.f(bv.part_II, bv.part_I) *
                   mid(bu.part_II, bv.part_II, kr.one(), in.c) * mid_bar(bu.part_I, bv.part_I, kr.one(), in.c);
          },
          false, kr.zero());
    });
    return prefactor * sum;
  }
  require_constraint(in);
  const Scalar sum = outer_u_sum(in, kr, [&](const Bipartition& bu) {
    return kr.f(in.v, bu.part_I) * mid(shifted_merge(in.u, bu, kr.c()), in.v, z, in.c);
  });
  return sign_power(static_cast<long>(in.n()), kr.one()) * prefactor * sum;
}

Scalar overlap_det_z(const OverlapInput& in, const Scalar& z, const ParamSet& eta) {
  const Kernels kr(in.c);
  if (in.n() > in.N()) return kr.zero();
  if (z == kr.one()) throw InvalidArgument("overlap_det_z needs z != 1");
  if (eta.size() != in.N()) throw InvalidArgument("overlap_det_z needs |eta| = N");
  if (!eta.pairwise_distinct()) throw PoleError("eta must be pairwise distinct");
  require_nonzero_rhos(in.twist2);
  require_onshell(in);
  require_constraint(in);
  const TwistGeneral& tw = in.twist2;
  const std::size_t N = in.N();
  const Scalar sign = sign_power(static_cast<long>(N) - 1, kr.one());
  const Matrix m = Matrix::build(N, N, [&](std::size_t j, std::size_t k) {
    const Scalar& x = in.u[j];
    const ParamSet e = eta.minus(k);
    return sign * lambda_hat1(in, x) * (kr.h(e, x) - z * kr.f(in.v, x) * kr.inv_g(e, x)) +
           lambda_hat2(in, x) * (kr.f(x, in.v) * kr.inv_g(x, e) - z * kr.h(x, e));
  });
  const Scalar prefactor = sign_power(static_cast<long>(in.n()), kr.one()) * tw.mu.pow(static_cast<long>(N)) *
                           (tw.kappa_minus / tw.rho1).pow(static_cast<long>(in.n())) *
                           in.weights.lambda2_of(in.v, kr.one()) * kr.delta_prime(eta) * kr.delta(in.u);
  return prefactor * determinant(m, kr.one());
}

Scalar overlap_det_z_scaled(const OverlapInput& in, const Scalar& z, const ParamSet& eta) {
  if (in.n() > in.N()) return in.c.value().zero_like();
  return one_minus_z_power(z, static_cast<long>(in.n()) - static_cast<long>(in.N())) * overlap_det_z(in, z, eta);
}

Scalar overlap_det(const OverlapInput& in) {
  const Kernels kr(in.c);
  if (in.n() > in.N()) return kr.zero();
  require_nonzero_rhos(in.twist2);
  require_onshell(in);
  require_constraint(in);
  const TwistGeneral& tw = in.twist2;
  const std::size_t N = in.N();
  const std::size_t n = in.n();
  const ParamSet& eta = in.eta_free;
  if (eta.size() != N - n) throw InvalidArgument("overlap_det needs |eta_free| = N - n");
  const Scalar sign_N = sign_power(static_cast<long>(N) - 1, kr.one());
  const Scalar sign_n = sign_power(static_cast<long>(n) + 1, kr.one());
  const Matrix m = Matrix::build(N, N, [&](std::size_t j, std::size_t k) {
    const Scalar& x = in.u[j];
    const Scalar l1 = lambda_hat1(in, x) * kr.h(in.v, x);
    const Scalar l2 = lambda_hat2(in, x) * kr.h(x, in.v);
    if (k < n) {
      const Scalar& vk = in.v[k];
      return sign_N * l1 *
                 (kr.ratio(kr.h(eta, x), kr.h(vk, x), "h(v_k, u_j)") - kr.g(vk, x) * kr.inv_g(eta, x)) +
             l2 * (kr.g(x, vk) * kr.inv_g(x, eta) - kr.ratio(kr.h(x, eta), kr.h(x, vk), "h(u_j, v_k)"));
    }
    const ParamSet e = eta.minus(k - n);
    return sign_n * l1 * kr.inv_g(x, e) - l2 * kr.h(x, e);
  });
  const Scalar prefactor = (-tw.mu).pow(static_cast<long>(N)) * (tw.kappa_minus / tw.rho1).pow(static_cast<long>(n)) *
                           in.weights.lambda2_of(in.v, kr.one()) * kr.delta_prime(in.v) * kr.delta_prime(eta) *
                           kr.g(in.v, eta) * kr.delta(in.u);
  return prefactor * determinant(m, kr.one());
}

Scalar overlap_det_reduced(const OverlapInput& in, Real* magnitude) {
  const Kernels kr(in.c);
  if (in.n() > in.N()) return kr.zero();
  const TwistGeneral& tw = in.twist2;
  if (tw.rho1.is_zero()) throw DegenerateTwist("reduced form needs rho != 0");
  if (!(tw.rho1 + tw.rho2).is_zero()) throw ConstraintViolated("reduced form needs rho1 = -rho2");
  if (in.alpha != kr.one()) throw ConstraintViolated("reduced form needs alpha = 1");
  require_onshell(in);
  {
    const BetheSystem sys = BetheSystem::reduced(in.weights, tw, in.N(), in.c);
    bool ok = true;
    if (in.c.mode() == ScalarMode::exact) {
      for (const auto& r : residual(sys, in.u)) ok = ok && r.is_zero();
    } else {
      PrecisionScope scope(in.c.value().precision_bits());
      ok = residual_norm(sys, in.u) <= in.onshell_tol;
    }
    if (!ok) throw ReducedSystemViolated("u does not satisfy the reduced Bethe system");
  }
  const std::size_t N = in.N();
  const std::size_t n = in.n();
  const ParamSet& eta = in.eta_free;
  if (eta.size() != N - n) throw InvalidArgument("overlap_det_reduced needs |eta_free| = N - n");
  const Scalar rho = tw.rho1;
  const Scalar alpha_eff = effective_alpha(tw);
  std::vector<Scalar> V;
  for (const auto& x : in.u) {
    V.push_back(kr.ratio(alpha_eff * kr.h(x, in.u) * kr.h(in.v, x), kr.h(in.u, x) * kr.h(x, in.v), "V_j"));
  }
  const Scalar sign = sign_power(static_cast<long>(N + n + 1), kr.one());
  const Matrix m = Matrix::build(N, N, [&](std::size_t j, std::size_t k) {
    const Scalar& x = in.u[j];
    if (k < n) {
      const Scalar& vk = in.v[k];
      return kr.g(x, vk) * kr.inv_g(x, eta) - kr.ratio(kr.h(x, eta), kr.h(x, vk), "h(u_j, v_k)") -
             V[j] * (kr.ratio(kr.h(eta, x), kr.h(vk, x), "h(v_k, u_j)") - kr.g(vk, x) * kr.inv_g(eta, x));
    }
    const ParamSet e = eta.minus(k - n);
    return sign * V[j] * kr.inv_g(x, e) - kr.h(x, e);
  });
  const Scalar prefactor = tw.mu.pow(static_cast<long>(N)) * (rho / tw.kappa_minus).pow(static_cast<long>(N - n)) *
                           in.weights.lambda2_of(in.v, kr.one()) * in.weights.lambda2_of(in.u, kr.one()) *
                           kr.h(in.u, in.v) * kr.delta_prime(in.v) * kr.delta_prime(eta) * kr.g(in.v, eta) *
                           kr.delta(in.u);
  if (magnitude) {
    Real bound = prefactor.modulus();
    for (std::size_t j = 0; j < N; ++j) {
      Real row = 0;
      for (std::size_t k = 0; k < N; ++k) row += m(j, k).modulus() * m(j, k).modulus();
      bound *= sqrt(row);
    }
    *magnitude = bound;
  }
  return prefactor * determinant(m, kr.one());
}

ValueAndDerivative eigenvalue_diag_with_derivative(const WeightPair& weights, const Scalar& alpha, const Scalar& z,
                                                   const ParamSet& roots, const ModelConstant& c) {
  return eigen_pieces(weights, c.value().one_like(), alpha, c.value().zero_like(), z, roots, c);
}

ValueAndDerivative eigenvalue_general_with_derivative(const WeightPair& weights, const TwistGeneral& twist,
                                                      const Scalar& z, const ParamSet& roots, const ModelConstant& c) {
  return eigen_pieces(weights, twist.kappa_tilde - twist.rho1, twist.kappa - twist.rho2, twist.rho1 + twist.rho2, z,
                      roots, c);
}

Scalar log_ratio_derivative(const WeightPair& weights, const Scalar& alpha, const TwistGeneral& twist2,
                            const ParamSet& v_roots, const ParamSet& u_roots, const Scalar& z, const ModelConstant& c) {
  const ValueAndDerivative l1 = eigenvalue_diag_with_derivative(weights, alpha, z, v_roots, c);
  const ValueAndDerivative l2 = eigenvalue_general_with_derivative(weights, twist2, z, u_roots, c);
  if (l1.value.is_zero() || l2.value.is_zero()) {
    throw EigenvalueZeroAtOrigin("transfer-matrix eigenvalue vanishes at the evaluation point");
  }
  return l1.derivative / l1.value - l2.derivative / l2.value;
}

Scalar rate_prefactor(const WeightPair& weights, const Scalar& alpha, const TwistGeneral& twist2,
                      const ParamSet& v_roots, const ParamSet& u_roots, const Scalar& overlap_value,
                      const ModelConstant& c) {
  const Scalar zero = c.value().zero_like();
  const Scalar d = log_ratio_derivative(weights, alpha, twist2, v_roots, u_roots, zero, c);
  return (c.value().like(2) * c.value() * d).norm() * overlap_value.norm();
}

}  // namespace bethe_overlap
