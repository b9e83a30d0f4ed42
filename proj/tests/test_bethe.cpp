#include <doctest.h>

#include "support.hpp"

using namespace testing;

TEST_CASE("diag residual vanishes at the one-magnon root") {
  const SpinChainModel model = SpinChainModel::homogeneous(2, unit_c());
  const WeightPair w = spin_half_weights(model);
  CHECK(w.lambda1(q(-1, 2)) == q(1, 4));
  CHECK(w.lambda2(q(-1, 2)) == q(1, 4));
  const BetheSystem sys = BetheSystem::diag(w, q(1), 1, unit_c());
  const Vector r = residual(sys, ParamSet{q(-1, 2)});
  REQUIRE(r.size() == 1);
  CHECK(r[0].is_zero());
  CHECK(residual_norm(sys, ParamSet{q(-1, 2)}) == 0);
  CHECK_FALSE(residual(sys, ParamSet{q(1, 3)})[0].is_zero());
}

TEST_CASE("random off-shell roots leave a residual") {
  Gen gen(71);
  for (int i = 0; i < 5; ++i) {
    const ModelConstant c = gen.c();
    const SpinChainModel model = gen.model(3, c);
    const BetheSystem sys = BetheSystem::diag(spin_half_weights(model), gen.nonzero(), 2, c);
    CHECK(residual_norm(sys, gen.set(2, c, model.theta)) > 0);
  }
}

TEST_CASE("modified and reduced residuals agree when rho1 = -rho2") {
  Gen gen(72);
  for (int i = 0; i < 10; ++i) {
    const ModelConstant c = gen.c();
    const SpinChainModel model = gen.model(3, c);
    const WeightPair w = spin_half_weights(model);
    const Scalar rho = gen.nonzero();
    TwistGeneral tw;
    try {
      tw = TwistGeneral::from_rhos(gen.scalar(), gen.nonzero(), gen.scalar(), rho, -rho);
    } catch (const DegenerateTwist&) {
      continue;
    }
    if (tw.kappa_tilde == rho) continue;
    const ParamSet roots = gen.set(2, c, model.theta);
    const Vector modified = residual(BetheSystem::modified(w, tw, 2, c), roots);
    const Vector reduced = residual(BetheSystem::reduced(w, tw, 2, c), roots);
    const Vector diag = residual(diag_equivalent(BetheSystem::reduced(w, tw, 2, c)), roots);
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(modified[j] == reduced[j]);
      CHECK(modified[j] == (tw.kappa_tilde - rho) * diag[j]);
    }
  }
  CHECK_THROWS_AS(BetheSystem::reduced(spin_half_weights(SpinChainModel::homogeneous(2, unit_c())),
                                       TwistGeneral::from_rhos(q(2), q(3), q(5), q(1), q(2)), 1, unit_c()),
                  ConstraintViolated);
}

TEST_CASE("residual terms sum to the residual") {
  Gen gen(73);
  const ModelConstant c = gen.c();
  const SpinChainModel model = gen.model(3, c);
  const TwistGeneral tw = gen.twist();
  const BetheSystem sys = BetheSystem::modified(spin_half_weights(model), tw, 2, c);
  const ParamSet roots = gen.set(2, c, model.theta);
  const Vector r = residual(sys, roots);
  const auto terms = residual_terms(sys, roots);
  for (std::size_t j = 0; j < r.size(); ++j) {
    Scalar sum = q(0);
    for (const auto& t : terms[j]) sum += t;
    CHECK(sum == r[j]);
  }
  CHECK_THROWS_AS(residual(sys, ParamSet{roots[0], roots[0]}), PoleError);
}

TEST_CASE("one-magnon twist") {
  const WeightPair w2 = spin_half_weights(SpinChainModel::homogeneous(2, unit_c()));
  CHECK(one_magnon_twist(w2, q(-1, 2)) == q(1));
  const WeightPair w1 = spin_half_weights(SpinChainModel::make(qs({0}), unit_c()));
  CHECK(one_magnon_twist(w1, q(1)) == q(2));
  CHECK_THROWS_AS(one_magnon_twist(w1, q(0)), Error);
  Gen gen(74);
  for (int i = 0; i < 5; ++i) {
    const ModelConstant c = gen.c();
    const SpinChainModel model = gen.model(3, c);
    const WeightPair w = spin_half_weights(model);
    const Scalar v = gen.set(1, c, model.theta)[0];
    const BetheSystem sys = BetheSystem::diag(w, one_magnon_twist(w, v), 1, c);
    CHECK(residual(sys, ParamSet{v})[0].is_zero());
  }
}

TEST_CASE("Newton finds the one-magnon root") {
  PrecisionScope scope(256);
  const ModelConstant c(fl(1.0));
  const SpinChainModel model = SpinChainModel::make(ParamSet{fl(0.0), fl(0.0)}, c, true);
  const BetheSystem sys = BetheSystem::diag(spin_half_weights(model), fl(1.0), 1, c);
  const RootSet rs = solve_newton(sys, ParamSet{fl(-0.4)}, Real("1e-40"), 50);
  REQUIRE(rs.converged);
  CHECK(close(rs.roots[0], fl(-0.5), 1e-12));
  CHECK(close(default_initial_guess(sys, 256)[0], q(-2, 5).to_floating(256), 1e-15));
}

TEST_CASE("Newton on four homogeneous sites with two roots") {
  PrecisionScope scope(256);
  const ModelConstant c(fl(1.0));
  const SpinChainModel model = SpinChainModel::make(ParamSet{fl(0.0), fl(0.0), fl(0.0), fl(0.0)}, c, true);
  const BetheSystem sys = BetheSystem::diag(spin_half_weights(model), fl(1.0), 2, c);
  const ParamSet start{fl(-0.5, -0.3), fl(-0.5, 0.3)};
  const RootSet rs = solve_newton(sys, start, Real("1e-10"), 100);
  REQUIRE(rs.converged);
  CHECK(rs.residual_norm <= Real("1e-10"));
  const Scalar& a = rs.roots[0];
  const Scalar& b = rs.roots[1];
  const bool conjugate_pair = close(a.conj(), b, 1e-8);
  const bool real_pair = abs(a.imag_part()) < Real("1e-8") && abs(b.imag_part()) < Real("1e-8");
  CHECK((conjugate_pair || real_pair));
  CHECK(default_initial_guess(sys, 256).size() == 2);
}

TEST_CASE("Newton with no iterations returns its input") {
  PrecisionScope scope(256);
  const ModelConstant c(fl(1.0));
  const SpinChainModel model = SpinChainModel::make(ParamSet{fl(0.0), fl(0.0)}, c, true);
  const BetheSystem sys = BetheSystem::diag(spin_half_weights(model), fl(1.0), 1, c);
  const RootSet rs = solve_newton(sys, ParamSet{fl(-0.4)}, Real("1e-40"), 0);
  CHECK_FALSE(rs.converged);
  CHECK(rs.roots[0] == fl(-0.4));
  CHECK(rs.iterations == 0);
}

TEST_CASE("Newton contracts") {
  const BetheSystem exact = BetheSystem::diag(spin_half_weights(SpinChainModel::homogeneous(2, unit_c())), q(1), 1,
                                              unit_c());
  CHECK_THROWS_AS(solve_newton(exact, ParamSet{q(-1, 3)}, Real("1e-10"), 10), InvalidArgument);
  PrecisionScope scope(256);
  const ModelConstant c(fl(1.0));
  const SpinChainModel model = SpinChainModel::make(ParamSet{fl(0.0), fl(0.0)}, c, true);
  const BetheSystem sys = BetheSystem::diag(spin_half_weights(model), fl(1.0), 2, c);
  CHECK_THROWS_AS(solve_newton(sys, ParamSet{fl(0.2), fl(0.2)}, Real("1e-10"), 10), InvalidArgument);
}

TEST_CASE("continuation from shifted inhomogeneities") {
  PrecisionScope scope(256);
  const ModelConstant c(fl(1.0));
  Gen gen(75, fl(0.0));
  const SpinChainModel model = gen.model(4, c);
  const WeightPair w = spin_half_weights(model);
  const BetheSystem sys = BetheSystem::diag(w, gen.nonzero(), 2, c);
  const RootSet rs = solve_from_anchors(sys, model.theta, Real("1e-60"), 100);
  REQUIRE(rs.converged);
  CHECK(residual_norm(sys, rs.roots) <= Real("1e-60"));
  // The roots yield an eigenvector of the diagonal transfer matrix.
  const Vector phi = bethe_vector(model, rs.roots);
  const Scalar x = fl(0.37);
  CHECK(eigen_residual(transfer_diag(model, sys.alpha, x), phi, eigenvalue_diag(w, sys.alpha, x, rs.roots, c)) <
        Real("1e-50"));
  CHECK_THROWS_AS(solve_by_continuation(BetheSystem::modified(w, gen.twist(), 2, c), model.theta, Real("1e-10"), 5),
                  InvalidArgument);
}
