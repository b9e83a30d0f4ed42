#include "bethe_overlap/bethe.hpp"

#include <algorithm>

#include "bethe_overlap/partitions.hpp"

namespace bethe_overlap {

namespace {

void require_rho_antisymmetric(const TwistGeneral& tw) {
  if (!(tw.rho1 + tw.rho2).is_zero()) throw ConstraintViolated("reduced system needs rho1 = -rho2");
  if (tw.rho1.is_zero()) throw DegenerateTwist("reduced system needs rho != 0");
  if ((tw.kappa_tilde - tw.rho1).is_zero()) throw DegenerateTwist("reduced system needs kappa_tilde != rho");
}

Scalar float_like(const Scalar& like, const Real& x) { return Scalar::floating(x, Real(0), like.precision_bits()); }

// Canonical order: by real part, then imaginary part.
ParamSet sorted_roots(const ParamSet& roots) {
  std::vector<Scalar> v = roots.elems();
  std::sort(v.begin(), v.end(), [](const Scalar& a, const Scalar& b) {
    if (a.real_part() != b.real_part()) return a.real_part() < b.real_part();
    return a.imag_part() < b.imag_part();
  });
  return ParamSet(std::move(v), roots.label());
}

bool has_collision(const ParamSet& roots, const Real& tol) {
  for (std::size_t j = 0; j < roots.size(); ++j) {
    for (std::size_t k = j + 1; k < roots.size(); ++k) {
      const Real scale = 1 + std::max(roots[j].modulus(), roots[k].modulus());
      if ((roots[j] - roots[k]).modulus() <= tol * scale) return true;
    }
  }
  return false;
}

Real safe_norm(const BetheSystem& sys, const ParamSet& roots) {
  try {
    return residual_norm(sys, roots);
  } catch (const PoleError&) {
    return Real(-1);
  } catch (const DivisionByZero&) {
    return Real(-1);
  }
}

ParamSet add_scaled(const ParamSet& x, const Vector& delta, const Scalar& lambda) {
  std::vector<Scalar> out;
  out.reserve(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) out.push_back(x[k] + lambda * delta[k]);
  return ParamSet(std::move(out), x.label());
}

}  // namespace

BetheSystem BetheSystem::diag(WeightPair weights, Scalar alpha, std::size_t root_count, ModelConstant c) {
  if (alpha.mode() != c.mode()) throw ModeMismatch("alpha and c differ in mode");
  BetheSystem s;
  s.kind = BetheKind::diag;
  s.weights = std::move(weights);
  s.alpha = std::move(alpha);
  s.root_count = root_count;
  s.c = std::move(c);
  return s;
}

BetheSystem BetheSystem::modified(WeightPair weights, TwistGeneral twist, std::size_t root_count, ModelConstant c) {
  if (twist.mu.mode() != c.mode()) throw ModeMismatch("twist and c differ in mode");
  BetheSystem s;
  s.kind = BetheKind::modified;
  s.weights = std::move(weights);
  s.alpha = c.value().one_like();
  s.twist = std::move(twist);
  s.root_count = root_count;
  s.c = std::move(c);
  return s;
}

BetheSystem BetheSystem::reduced(WeightPair weights, TwistGeneral twist, std::size_t root_count, ModelConstant c) {
  require_rho_antisymmetric(twist);
  BetheSystem s = modified(std::move(weights), std::move(twist), root_count, std::move(c));
  s.kind = BetheKind::reduced;
  return s;
}

Scalar effective_alpha(const TwistGeneral& twist) {
  const Scalar den = twist.kappa_tilde - twist.rho1;
  if (den.is_zero()) throw DegenerateTwist("kappa_tilde = rho1");
  return (twist.kappa - twist.rho2) / den;
}

BetheSystem diag_equivalent(const BetheSystem& sys) {
  if (sys.kind == BetheKind::diag) return sys;
  require_rho_antisymmetric(*sys.twist);
  return BetheSystem::diag(sys.weights, effective_alpha(*sys.twist), sys.root_count, sys.c);
}

std::vector<Vector> residual_terms(const BetheSystem& sys, const ParamSet& roots) {
  const Kernels kr(sys.c);
  const std::size_t n = roots.size();
  std::vector<Vector> out;
  out.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Scalar& u = roots[j];
    const ParamSet others = roots.minus(j);
    switch (sys.kind) {
      case BetheKind::diag:
        out.push_back({sys.weights.lambda1(u) * kr.f(others, u), -sys.alpha * sys.weights.lambda2(u) * kr.f(u, others)});
        break;
      case BetheKind::modified: {
        const TwistGeneral& tw = *sys.twist;
        const Scalar l1 = sys.weights.lambda1(u);
        const Scalar l2 = sys.weights.lambda2(u);
        out.push_back({(tw.kappa_tilde - tw.rho1) * l1 * kr.f(others, u), -(tw.kappa - tw.rho2) * l2 * kr.f(u, others),
                       -(tw.rho1 + tw.rho2) * l1 * l2 * kr.g(u, others)});
        break;
      }
      case BetheKind::reduced: {
        // lambda-hat1 h(u, u_j) - (-1)^N V h(u_j, u) lambda-hat2, rescaled so that
        // it coincides term by term with the modified residual.
        const TwistGeneral& tw = *sys.twist;
        const Scalar lhat1 = tw.rho1 / tw.kappa_minus * sys.weights.lambda1(u);
        const Scalar lhat2 = tw.rho2 / tw.kappa_minus * sys.weights.lambda2(u);
        const Scalar scale = tw.kappa_minus / tw.rho1 * (tw.kappa_tilde - tw.rho1) * kr.g(others, u);
        const Scalar sign = sign_power(static_cast<long>(n), u);
        out.push_back({scale * lhat1 * kr.h(roots, u),
                       -scale * sign * effective_alpha(tw) * kr.h(u, roots) * lhat2});
        break;
      }
    }
  }
  return out;
}

Vector residual(const BetheSystem& sys, const ParamSet& roots) {
  Vector out;
  for (const auto& terms : residual_terms(sys, roots)) {
    Scalar sum = terms.front().zero_like();
    for (const auto& t : terms) sum += t;
    out.push_back(std::move(sum));
  }
  return out;
}

Real residual_norm(const BetheSystem& sys, const ParamSet& roots) {
  Real worst = 0;
  for (const auto& terms : residual_terms(sys, roots)) {
    Scalar sum = terms.front().zero_like();
    Real scale = 0;
    for (const auto& t : terms) {
      sum += t;
      scale += t.modulus();
    }
    const Real mag = sum.modulus();
    const Real rel = scale == 0 ? mag : Real(mag / scale);
    if (rel > worst) worst = rel;
  }
  return worst;
}

RootSet solve_newton(const BetheSystem& sys, const ParamSet& initial, const Real& tol, int max_iter) {
  if (sys.mode() != ScalarMode::floating) throw InvalidArgument("solve_newton runs in float mode");
  if (!initial.pairwise_distinct()) throw InvalidArgument("initial roots must be pairwise distinct");
  const unsigned bits = sys.c.value().precision_bits();
  PrecisionScope scope(bits);

  RootSet best;
  best.roots = initial;
  best.residual_norm = safe_norm(sys, initial);
  if (max_iter <= 0) {
    best.message = "max_iter = 0";
    return best;
  }
  if (best.residual_norm < 0) throw PoleError("initial roots sit on a pole of the Bethe equations");

  const std::size_t n = initial.size();
  const Scalar one = sys.c.value().one_like();
  const Real step = boost::multiprecision::pow(Real(2), -static_cast<long>(bits) / 3);
  const Real floor = boost::multiprecision::pow(Real(2), -20);

  ParamSet x = initial;
  Real norm = best.residual_norm;
  for (int it = 0; it < max_iter; ++it) {
    if (norm <= tol) break;
    const Vector r = residual(sys, x);
    Matrix jac = Matrix::zeros(n, n, one);
    for (std::size_t k = 0; k < n; ++k) {
      const Scalar hk = float_like(one, step * (1 + x[k].modulus()));
      std::vector<Scalar> plus = x.elems();
      std::vector<Scalar> minus = x.elems();
      plus[k] += hk;
      minus[k] -= hk;
      const Vector rp = residual(sys, ParamSet(std::move(plus)));
      const Vector rm = residual(sys, ParamSet(std::move(minus)));
      for (std::size_t j = 0; j < n; ++j) jac(j, k) = (rp[j] - rm[j]) / (hk * one.like(2));
    }
    Vector rhs;
    for (const auto& rj : r) rhs.push_back(-rj);
    Vector delta;
    try {
      delta = solve(jac, rhs);
    } catch (const SingularMatrix&) {
      throw JacobianSingular("Newton Jacobian is singular at iteration " + std::to_string(it));
    }
    Real lambda = 1;
    bool accepted = false;
    while (lambda >= floor) {
      const ParamSet trial = add_scaled(x, delta, float_like(one, lambda));
      const Real trial_norm = safe_norm(sys, trial);
      if (trial_norm >= 0 && trial_norm < norm) {
        x = trial;
        norm = trial_norm;
        accepted = true;
        break;
      }
      lambda /= 2;
    }
    best.iterations = it + 1;
    if (!accepted) {
      best.message = "damping floor reached without decrease";
      break;
    }
  }
  best.roots = x;
  best.residual_norm = norm;
  best.converged = norm <= tol;
  if (best.converged && has_collision(x, Real(tol * 1000))) {
    best.converged = false;
    best.message = "roots collide within 1e3 * tol";
  }
  if (best.converged) best.roots = sorted_roots(x);
  if (!best.converged && best.message.empty()) best.message = "iteration limit reached";
  return best;
}

RootSet solve_by_continuation(const BetheSystem& sys, const ParamSet& start, const Real& tol, int max_iter,
                              const ContinuationOptions& options) {
  if (sys.kind != BetheKind::diag) throw InvalidArgument("continuation runs on a diag system");
  PrecisionScope scope(sys.c.value().precision_bits());
  const Scalar one = sys.c.value().one_like();
  ParamSet x = start;
  RootSet step_result;
  for (int k = 0; k <= options.steps; ++k) {
    const double frac = static_cast<double>(k) / options.steps;
    const Real t = boost::multiprecision::pow(Real(options.t_start), Real(1 - frac));
    BetheSystem stage = sys;
    stage.alpha = sys.alpha * float_like(one, t);
    try {
      step_result = solve_newton(stage, x, Real(options.step_tol), options.step_max_iter);
    } catch (const Error& e) {
      RootSet failed;
      failed.roots = x;
      failed.message = std::string("continuation failed: ") + e.what();
      return failed;
    }
    if (!step_result.converged) {
      step_result.message = "continuation stalled at t = " + std::to_string(static_cast<double>(t));
      return step_result;
    }
    for (const auto& r : step_result.roots) {
      if (r.modulus() > options.escape_radius) {
        step_result.converged = false;
        step_result.message = "a root escaped to infinity";
        return step_result;
      }
    }
    x = step_result.roots;
  }
  return solve_newton(sys, x, tol, max_iter);
}

RootSet solve_from_anchors(const BetheSystem& sys, const ParamSet& anchors, const Real& tol, int max_iter,
                           const ContinuationOptions& options) {
  const BetheSystem path = diag_equivalent(sys);
  RootSet last;
  last.message = "no anchor subset converged";
  BipartitionEnumerator subsets(anchors, sys.root_count);
  while (auto b = subsets.next()) {
    const ParamSet start = b->part_I.shift(-sys.c.value());
    RootSet rs = solve_by_continuation(path, start, tol, max_iter, options);
    if (rs.converged && sys.kind != BetheKind::diag) rs = solve_newton(sys, rs.roots, tol, max_iter);
    if (rs.converged) return rs;
    last = rs;
  }
  return last;
}

ParamSet default_initial_guess(const BetheSystem& sys, unsigned bits) {
  PrecisionScope scope(bits);
  const Scalar c = sys.c.value().is_exact() ? sys.c.value().to_floating(bits) : sys.c.value();
  std::vector<Scalar> out;
  const std::size_t n = sys.root_count;
  for (std::size_t k = 0; k < n; ++k) {
    const double offset = 0.6 * (static_cast<double>(k) - (static_cast<double>(n) - 1) / 2);
    out.push_back(-c / c.like(2) + Scalar::floating(0.0, offset, bits) * c);
  }
  if (n % 2 == 1) out[n / 2] += Scalar::floating(0.1, 0.0, bits) * c;  // keep the middle root off -c/2
  return ParamSet(std::move(out), "u");
}

Scalar one_magnon_twist(const WeightPair& weights, const Scalar& v) {
  const Scalar l2 = weights.lambda2(v);
  if (l2.is_zero()) throw DivisionByZero("lambda2(v) = 0: no one-root twist");
  return weights.lambda1(v) / l2;
}

}  // namespace bethe_overlap
