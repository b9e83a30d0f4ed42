#include "bethe_overlap/chain.hpp"

namespace bethe_overlap {

namespace {

// Elementary 2x2 unit E_ab (a, b in {0, 1}).
Matrix unit_2x2(std::size_t a, std::size_t b, const Scalar& like) {
  Matrix e = Matrix::zeros(2, 2, like);
  e(a, b) = like.one_like();
  return e;
}

void require_same_mode(std::initializer_list<const Scalar*> xs) {
  const Scalar* first = *xs.begin();
  for (const Scalar* x : xs) {
    if (x->mode() != first->mode()) throw ModeMismatch("twist parameters mix exact and floating values");
  }
}

Scalar compute_mu(const Scalar& kp, const Scalar& km, const Scalar& r1, const Scalar& r2) {
  const Scalar kk = kp * km;
  const Scalar den = kk - r1 * r2;
  if (den.is_zero()) throw DegenerateTwist("kappa+ kappa- = rho1 rho2: mu is singular");
  return kk / den;
}

Vector apply_left(const Matrix& m, const Vector& x) { return matvec(m, x); }

}  // namespace

SpinChainModel SpinChainModel::make(ParamSet theta, ModelConstant c, bool allow_coincident_theta) {
  if (theta.empty()) throw InvalidArgument("a chain needs at least one site");
  for (const auto& t : theta) {
    if (t.mode() != c.mode()) throw ModeMismatch("inhomogeneities and c differ in mode");
  }
  const std::size_t cap = c.mode() == ScalarMode::exact ? kMaxExactSites : kMaxFloatSites;
  if (theta.size() > cap) throw SizeLimitExceeded("chain length " + std::to_string(theta.size()) + " exceeds cap");
  if (!allow_coincident_theta && !theta.pairwise_distinct()) {
    throw InvalidArgument("inhomogeneities must be pairwise distinct (pass allow_coincident_theta for homogeneous runs)");
  }
  SpinChainModel m;
  m.L = theta.size();
  m.c = std::move(c);
  m.theta = std::move(theta);
  m.allow_coincident_theta = allow_coincident_theta;
  return m;
}

SpinChainModel SpinChainModel::homogeneous(std::size_t L, ModelConstant c) {
  std::vector<Scalar> zeros(L, c.value().zero_like());
  return make(ParamSet(std::move(zeros), "theta"), std::move(c), true);
}

Scalar WeightPair::lambda1_of(const ParamSet& s, const Scalar& one) const {
  Scalar out = one;
  for (const auto& x : s) out *= lambda1(x);
  return out;
}

Scalar WeightPair::lambda2_of(const ParamSet& s, const Scalar& one) const {
  Scalar out = one;
  for (const auto& x : s) out *= lambda2(x);
  return out;
}

WeightPair spin_half_weights(const SpinChainModel& model) {
  const ParamSet theta = model.theta;
  const Scalar c = model.c.value();
  auto factor1 = [c](const Scalar& u, const Scalar& t) { return (u - t + c) / c; };
  auto factor2 = [c](const Scalar& u, const Scalar& t) { return (u - t) / c; };
  // d/du of prod_k factor(u, theta_k); every factor has derivative 1/c.
  auto derivative = [theta, c](const Scalar& u, auto factor) {
    Scalar sum = c.zero_like();
    for (std::size_t k = 0; k < theta.size(); ++k) {
      Scalar term = c.one_like() / c;
      for (std::size_t j = 0; j < theta.size(); ++j) {
        if (j != k) term *= factor(u, theta[j]);
      }
      sum += term;
    }
    return sum;
  };
  WeightPair w;
  w.lambda1 = [theta, c, factor1](const Scalar& u) {
    Scalar out = c.one_like();
    for (const auto& t : theta) out *= factor1(u, t);
    return out;
  };
  w.lambda2 = [theta, c, factor2](const Scalar& u) {
    Scalar out = c.one_like();
    for (const auto& t : theta) out *= factor2(u, t);
    return out;
  };
  w.dlambda1 = [derivative, factor1](const Scalar& u) { return derivative(u, factor1); };
  w.dlambda2 = [derivative, factor2](const Scalar& u) { return derivative(u, factor2); };
  return w;
}

TwistDiag TwistDiag::make(Scalar alpha) {
  if (alpha.is_zero()) throw DegenerateTwist("diagonal twist alpha must be nonzero");
  return TwistDiag{std::move(alpha)};
}

TwistGeneral TwistGeneral::make(Scalar kappa_tilde, Scalar kappa_plus, Scalar kappa_minus, Scalar kappa, Scalar rho1) {
  require_same_mode({&kappa_tilde, &kappa_plus, &kappa_minus, &kappa, &rho1});
  if (kappa_plus.is_zero() || kappa_minus.is_zero()) throw DegenerateTwist("kappa+ and kappa- must be nonzero");
  const Scalar den = rho1 - kappa_tilde;
  if (den.is_zero()) throw DegenerateTwist("rho1 = kappa_tilde leaves rho2 undetermined");
  Scalar rho2 = (kappa * rho1 - kappa_plus * kappa_minus) / den;
  Scalar mu = compute_mu(kappa_plus, kappa_minus, rho1, rho2);
  return TwistGeneral{std::move(kappa_tilde), std::move(kappa_plus), std::move(kappa_minus), std::move(kappa),
                      std::move(rho1),        std::move(rho2),       std::move(mu)};
}

TwistGeneral TwistGeneral::from_rhos(Scalar kappa_tilde, Scalar kappa_minus, Scalar kappa, Scalar rho1, Scalar rho2) {
  require_same_mode({&kappa_tilde, &kappa_minus, &kappa, &rho1, &rho2});
  if (kappa_minus.is_zero()) throw DegenerateTwist("kappa- must be nonzero");
  Scalar kappa_plus = (kappa * rho1 + kappa_tilde * rho2 - rho1 * rho2) / kappa_minus;
  if (kappa_plus.is_zero()) throw DegenerateTwist("solved kappa+ vanishes");
  Scalar mu = compute_mu(kappa_plus, kappa_minus, rho1, rho2);
  return TwistGeneral{std::move(kappa_tilde), std::move(kappa_plus), std::move(kappa_minus), std::move(kappa),
                      std::move(rho1),        std::move(rho2),       std::move(mu)};
}

Numeric2x2 TwistGeneral::K() const { return {{{kappa_tilde, kappa_plus}, {kappa_minus, kappa}}}; }

Numeric2x2 TwistGeneral::A_bar() const {
  const Scalar one = kappa.one_like();
  return {{{one, rho2 / kappa_minus}, {rho1 / kappa_plus, one}}};
}

Numeric2x2 TwistGeneral::B_bar() const {
  const Scalar one = kappa.one_like();
  return {{{one, rho1 / kappa_minus}, {rho2 / kappa_plus, one}}};
}

Numeric2x2 TwistGeneral::D() const {
  const Scalar zero = kappa.zero_like();
  return {{{kappa_tilde - rho1, zero}, {zero, kappa - rho2}}};
}

Scalar TwistGeneral::constraint_defect() const {
  return rho1 * rho2 - (kappa * rho1 + kappa_tilde * rho2) + kappa_plus * kappa_minus;
}

Numeric2x2 multiply(const Numeric2x2& a, const Numeric2x2& b) {
  Numeric2x2 out{{{a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]},
                  {a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]}}};
  return out;
}

Monodromy build_monodromy(const SpinChainModel& model, const Scalar& u) {
  const Scalar& c = model.c.value();
  if (u.mode() != c.mode()) throw ModeMismatch("spectral parameter and chain differ in mode");
  const Scalar one = c.one_like();
  Monodromy t{{{Matrix::identity(1, one), Matrix::zeros(1, 1, one)}, {Matrix::zeros(1, 1, one), Matrix::identity(1, one)}}};
  for (const auto& th : model.theta) {
    const Scalar x = (u - th) / c;
    // Auxiliary entry (a, b) of the L-operator acting on the new site: x delta_ab + E_ba.
    std::array<std::array<Matrix, 2>, 2> lop;
    for (std::size_t a = 0; a < 2; ++a) {
      for (std::size_t b = 0; b < 2; ++b) {
        Matrix e = unit_2x2(b, a, one);
        if (a == b) e += Matrix::identity(2, one) * x;
        lop[a][b] = std::move(e);
      }
    }
    Monodromy next;
    for (std::size_t a = 0; a < 2; ++a) {
      for (std::size_t b = 0; b < 2; ++b) {
        next[a][b] = kron(lop[a][0], t[0][b]) + kron(lop[a][1], t[1][b]);
      }
    }
    t = std::move(next);
  }
  return t;
}

Vector vacuum(const SpinChainModel& model) {
  Vector v(model.dim(), model.c.value().zero_like());
  v[0] = model.c.value().one_like();
  return v;
}

Vector bethe_vector(const SpinChainModel& model, const ParamSet& u) {
  Vector state = vacuum(model);
  for (std::size_t k = u.size(); k-- > 0;) state = apply_left(build_monodromy(model, u[k])[0][1], state);
  return state;
}

Vector dual_bethe_vector(const SpinChainModel& model, const ParamSet& u) {
  Vector state = vacuum(model);
  for (const auto& x : u) state = vecmat(state, build_monodromy(model, x)[1][0]);
  return state;
}

namespace {

OperatorMatrix modified_from(const Monodromy& t, const TwistGeneral& tw, int k, int l) {
  const Scalar& kp = tw.kappa_plus;
  const Scalar& km = tw.kappa_minus;
  const Scalar& r1 = tw.rho1;
  const Scalar& r2 = tw.rho2;
  OperatorMatrix out;
  if (k == 1 && l == 1) {
    out = t[0][0] + t[0][1] * (r2 / kp) + t[1][0] * (r2 / km) + t[1][1] * (r2 * r2 / (km * kp));
  } else if (k == 2 && l == 2) {
    out = t[1][1] + t[0][1] * (r1 / kp) + t[1][0] * (r1 / km) + t[0][0] * (r1 * r1 / (km * kp));
  } else if (k == 1 && l == 2) {
    out = t[0][1] + t[0][0] * (r1 / km) + t[1][1] * (r2 / km) + t[1][0] * (r1 * r2 / (km * km));
  } else if (k == 2 && l == 1) {
    out = t[1][0] + t[0][0] * (r1 / kp) + t[1][1] * (r2 / kp) + t[0][1] * (r1 * r2 / (kp * kp));
  } else {
    throw InvalidArgument("modified operator indices must be 1 or 2");
  }
  return out * tw.mu;
}

}  // namespace

OperatorMatrix modified_operator(const SpinChainModel& model, const TwistGeneral& twist, int k, int l, const Scalar& u) {
  return modified_from(build_monodromy(model, u), twist, k, l);
}

Monodromy modified_monodromy_product(const SpinChainModel& model, const TwistGeneral& twist, const Scalar& u) {
  const Monodromy t = build_monodromy(model, u);
  const Numeric2x2 a = twist.A_bar();
  const Numeric2x2 b = twist.B_bar();
  Monodromy out;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t l = 0; l < 2; ++l) {
      Matrix acc = Matrix::zeros(model.dim(), model.dim(), twist.mu);
      for (std::size_t p = 0; p < 2; ++p) {
        for (std::size_t q = 0; q < 2; ++q) acc += t[p][q] * (a[i][p] * b[q][l]);
      }
      out[i][l] = acc * twist.mu;
    }
  }
  return out;
}

Vector modified_bethe_vector(const SpinChainModel& model, const TwistGeneral& twist, const ParamSet& u) {
  Vector state = vacuum(model);
  for (std::size_t k = u.size(); k-- > 0;) state = apply_left(modified_operator(model, twist, 1, 2, u[k]), state);
  return state;
}

Vector dual_modified_bethe_vector(const SpinChainModel& model, const TwistGeneral& twist, const ParamSet& u) {
  Vector state = vacuum(model);
  for (const auto& x : u) state = vecmat(state, modified_operator(model, twist, 2, 1, x));
  return state;
}

OperatorMatrix transfer_diag(const SpinChainModel& model, const Scalar& alpha, const Scalar& u) {
  const Monodromy t = build_monodromy(model, u);
  return t[0][0] + t[1][1] * alpha;
}

OperatorMatrix transfer_general(const SpinChainModel& model, const TwistGeneral& twist, const Scalar& u) {
  const Monodromy t = build_monodromy(model, u);
  const Numeric2x2 k = twist.K();
  Matrix acc = Matrix::zeros(model.dim(), model.dim(), u);
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) acc += t[b][a] * k[a][b];
  }
  return acc;
}

OperatorMatrix transfer_general_via_modified(const SpinChainModel& model, const TwistGeneral& twist, const Scalar& u) {
  const Monodromy t = build_monodromy(model, u);
  const Numeric2x2 d = twist.D();
  return modified_from(t, twist, 1, 1) * d[0][0] + modified_from(t, twist, 2, 2) * d[1][1];
}

Scalar eigenvalue_diag(const WeightPair& weights, const Scalar& alpha, const Scalar& v, const ParamSet& u,
                       const ModelConstant& c) {
  const Kernels kr(c);
  return weights.lambda1(v) * kr.f(u, v) + alpha * weights.lambda2(v) * kr.f(v, u);
}

Scalar eigenvalue_general(const WeightPair& weights, const TwistGeneral& twist, const Scalar& v, const ParamSet& u,
                          const ModelConstant& c) {
  const Kernels kr(c);
  const Scalar l1 = weights.lambda1(v);
  const Scalar l2 = weights.lambda2(v);
  Scalar out = (twist.kappa_tilde - twist.rho1) * l1 * kr.f(u, v) + (twist.kappa - twist.rho2) * l2 * kr.f(v, u);
  const Scalar inhom = twist.rho1 + twist.rho2;
  if (!inhom.is_zero()) out += inhom * l1 * l2 * kr.g(v, u);
  return out;
}

Scalar brute_overlap(const SpinChainModel& model, const TwistGeneral& twist, const ParamSet& v, const ParamSet& u) {
  const Vector ket = modified_bethe_vector(model, twist, u);
  const Vector bra = dual_bethe_vector(model, v);
  return dot(bra, ket);
}

Matrix rtt_residual(const SpinChainModel& model, const Scalar& u, const Scalar& v) {
  const auto [left, right] = rtt_sides(model, u, v);
  return left - right;
}

std::pair<Matrix, Matrix> rtt_sides(const SpinChainModel& model, const Scalar& u, const Scalar& v) {
  const Scalar one = model.c.value().one_like();
  const Monodromy tu = build_monodromy(model, u);
  const Monodromy tv = build_monodromy(model, v);
  const Matrix id2 = Matrix::identity(2, one);
  const Matrix idh = Matrix::identity(model.dim(), one);
  const std::size_t big = 4 * model.dim();
  Matrix t1 = Matrix::zeros(big, big, one);
  Matrix t2 = Matrix::zeros(big, big, one);
  Matrix perm = Matrix::zeros(4, 4, one);
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) {
      const Matrix e = unit_2x2(a, b, one);
      t1 += kron(e, kron(id2, tu[a][b]));
      t2 += kron(id2, kron(e, tv[a][b]));
      perm += kron(e, unit_2x2(b, a, one));
    }
  }
  const Matrix r = kron(Matrix::identity(4, one) * ((u - v) / model.c.value()) + perm, idh);
  return {r * t1 * t2, t2 * t1 * r};
}

OperatorMatrix hamiltonian_at_zero(const SpinChainModel& model,
                                   const std::function<OperatorMatrix(const Scalar&)>& transfer) {
  const Scalar one = model.c.value().one_like();
  const std::size_t nodes = model.L + 1;
  std::vector<Scalar> x;
  for (std::size_t i = 0; i < nodes; ++i) x.push_back(one.like(static_cast<long>(i)));
  // Derivative at 0 of the Lagrange basis polynomial of node i.
  auto weight = [&](std::size_t i) {
    Scalar sum = one.zero_like();
    for (std::size_t m = 0; m < nodes; ++m) {
      if (m == i) continue;
      Scalar term = one / (x[i] - x[m]);
      for (std::size_t j = 0; j < nodes; ++j) {
        if (j != i && j != m) term *= (-x[j]) / (x[i] - x[j]);
      }
      sum += term;
    }
    return sum;
  };
  const OperatorMatrix t0 = transfer(x[0]);
  OperatorMatrix dt = t0 * weight(0);
  for (std::size_t i = 1; i < nodes; ++i) dt += transfer(x[i]) * weight(i);
  OperatorMatrix t0_inv;
  try {
    t0_inv = inverse(t0);
  } catch (const SingularMatrix&) {
    throw SingularAtZero("transfer matrix is singular at u = 0");
  }
  return dt * t0_inv * (model.c.value() * one.like(2));
}

OperatorMatrix hamiltonian_at_zero(const SpinChainModel& model, const Scalar& alpha) {
  return hamiltonian_at_zero(model, [&](const Scalar& u) { return transfer_diag(model, alpha, u); });
}

OperatorMatrix hamiltonian_at_zero(const SpinChainModel& model, const TwistGeneral& twist) {
  return hamiltonian_at_zero(model, [&](const Scalar& u) { return transfer_general(model, twist, u); });
}

Real eigen_residual(const OperatorMatrix& t, const Vector& v, const Scalar& lambda) {
  const Real scale = max_modulus(v);
  if (scale == 0) throw InvalidArgument("eigen_residual of the zero vector");
  Vector r = matvec(t, v);
  for (std::size_t k = 0; k < r.size(); ++k) r[k] -= lambda * v[k];
  return Real(max_modulus(r) / scale);
}

}  // namespace bethe_overlap
