#include <doctest.h>

#include "support.hpp"

using namespace testing;

namespace {

MidInput random_input(Gen& gen, std::size_t n, std::size_t m, bool with_eta_n) {
  const ModelConstant c = gen.c();
  const ParamSet u = gen.set(n, c, {}, "u");
  const ParamSet v = gen.set(m, c, u, "v");
  const ParamSet eta = gen.set(with_eta_n ? n : m, c, u.concat(v), "eta");
  return MidInput::make(u, v, gen.avoiding({1}), c, eta);
}

}  // namespace

TEST_CASE("MID small cases") {
  const ModelConstant c = unit_c();
  const Scalar z = q(5, 7);
  CHECK(mid_direct(MidInput::make(qs({2}), qs({0}), z, c)) == q(3, 2) - z);
  CHECK(mid_direct(MidInput::make({}, qs({0}), z, c)) == q(1) - z);
  CHECK(mid_direct(MidInput::make(qs({2, 9}), {}, z, c)) == q(1));
  CHECK(mid_dual(MidInput::make(qs({2}), qs({0}), z, c)) == q(3, 2) - z);
  CHECK(mid_dual(MidInput::make(qs({2}), {}, q(0), c)) == q(1));
  CHECK(mid_eta_n(MidInput::make(qs({2}), qs({0}), z, c, qs({13}))) == q(3, 2) - z);
  CHECK(mid_eta_m(MidInput::make(qs({2}), qs({0}), z, c, qs({13}))) == q(3, 2) - z);
  CHECK(mid_eta_m(MidInput::make(qs({2}), {}, z, c, ParamSet{})) == q(1));
  CHECK(mid_conjugate(MidInput::make(qs({2}), qs({0}), z, c)) == q(1, 2) - z);
  CHECK(mid_conjugate(MidInput::make({}, {}, z, c)) == q(1));
}

TEST_CASE("MID at z = 0 with n = 2, m = 0 through the eta form") {
  Gen gen(31);
  for (int i = 0; i < 5; ++i) {
    const ModelConstant c = gen.c();
    const ParamSet u = gen.set(2, c);
    const ParamSet eta = gen.set(2, c, u);
    CHECK(mid_eta_n(MidInput::make(u, {}, q(0), c, eta)) == q(1));
  }
}

TEST_CASE("MID representations agree with the cofactor oracle") {
  Gen gen(32);
  for (std::size_t n = 0; n <= 3; ++n) {
    for (std::size_t m = 0; m <= 3; ++m) {
      for (int i = 0; i < 3; ++i) {
        const MidInput in = random_input(gen, n, m, true);
        const Scalar direct = mid_direct(in);
        CHECK(direct == mid_oracle(in.u, in.v, in.z, in.c.value()));
        CHECK(mid_dual(in) == direct);
        CHECK(mid_eta_n(in) == direct);
        MidInput other = in;
        other.eta = gen.set(m, in.c, in.u.concat(in.v));
        CHECK(mid_eta_m(other) == direct);
      }
    }
  }
}

TEST_CASE("MID eta forms do not depend on eta") {
  Gen gen(33);
  for (int i = 0; i < 5; ++i) {
    const MidInput a = random_input(gen, 2, 2, true);
    MidInput b = a;
    b.eta = gen.set(2, a.c, a.u.concat(a.v));
    CHECK(mid_eta_n(a) == mid_eta_n(b));
    CHECK(mid_eta_m(a) == mid_eta_m(b));
    CHECK(mid_eta_n(a) == mid_direct(a));
  }
}

TEST_CASE("MID is symmetric in each argument set") {
  Gen gen(34);
  for (int i = 0; i < 5; ++i) {
    const MidInput in = random_input(gen, 2, 3, true);
    const ParamSet v_perm{in.v[2], in.v[0], in.v[1]};
    const ParamSet u_perm{in.u[1], in.u[0]};
    CHECK(mid(in.u, v_perm, in.z, in.c) == mid_direct(in));
    CHECK(mid(u_perm, in.v, in.z, in.c) == mid_direct(in));
  }
}

TEST_CASE("conjugate MID relation") {
  Gen gen(35);
  for (std::size_t n = 0; n <= 3; ++n) {
    for (std::size_t m = 0; m <= 3; ++m) {
      const MidInput in = random_input(gen, n, m, true);
      const Scalar lhs = mid_conjugate(in);
      CHECK(lhs == mid_conjugate(in, MidRepresentation::dual));
      const Scalar rhs = one_minus_z_power(in.z, static_cast<long>(m) - static_cast<long>(n)) *
                         mid(in.v, in.u, in.z, in.c);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("MID error contracts") {
  const ModelConstant c = unit_c();
  CHECK_THROWS_AS(MidInput::make(qs({1}), qs({1}), q(2), c), PoleError);
  CHECK_THROWS_AS(MidInput::make(qs({1, 1}), qs({3}), q(2), c), PoleError);
  CHECK_THROWS_AS(MidInput::make(qs({1}), qs({3}), q(2), c, qs({3})), PoleError);
  CHECK_THROWS_AS(MidInput::make(qs({1}), qs({3}), fl(2.0), c), ModeMismatch);
  CHECK_THROWS_AS(mid_dual(MidInput::make(qs({1, 5}), qs({3}), q(1), c)), PrefactorSingular);
  CHECK_THROWS_AS(mid_eta_n(MidInput::make(qs({1}), qs({3}), q(2), c)), InvalidArgument);
  CHECK_THROWS_AS(mid_eta_n(MidInput::make(qs({1}), qs({3}), q(2), c, qs({7, 8}))), InvalidArgument);
  CHECK_THROWS_AS(one_minus_z_power(q(1), -1), PrefactorSingular);
  CHECK(one_minus_z_power(q(1), 0) == q(1));
}

TEST_CASE("MID vanishes at z = 1 when m > n") {
  Gen gen(36);
  for (std::size_t n = 0; n <= 2; ++n) {
    const MidInput in = random_input(gen, n, n + 1, true);
    CHECK(mid(in.u, in.v, q(1), in.c).is_zero());
    CHECK(mid_oracle(in.u, in.v, q(1), in.c.value()).is_zero());
  }
  PrecisionScope scope(256);
  const ModelConstant c(fl(1.0));
  CHECK(mid(ParamSet{fl(0.3)}, ParamSet{fl(1.7), fl(-2.2)}, fl(1.0), c).is_zero());
}

TEST_CASE("corollary determinant equals (1-z)^n") {
  Gen gen(37);
  for (std::size_t n = 0; n <= 4; ++n) {
    for (int i = 0; i < 3; ++i) {
      const ModelConstant c = gen.c();
      const ParamSet u = gen.set(n, c);
      const ParamSet eta = gen.set(n, c, u);
      const Scalar z = gen.scalar();
      CHECK(corollary_determinant(u, eta, z, c) == one_minus_z_power(z, static_cast<long>(n)));
    }
  }
  CHECK_THROWS_AS(corollary_determinant(qs({1, 2}), qs({5}), q(0), unit_c()), InvalidArgument);
}

TEST_CASE("G sums and Cauchy determinants") {
  Gen gen(38);
  for (std::size_t n = 1; n <= 3; ++n) {
    const ModelConstant c = gen.c();
    const ParamSet u = gen.set(n, c);
    const ParamSet eta = gen.set(n, c, u);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) CHECK(sum_G_closed(u, eta, j, k, c).holds_exactly());
    }
    CHECK(cauchy_det(u, eta, CauchyKind::g_matrix, c).holds_exactly());
    CHECK(cauchy_det(u, eta, CauchyKind::inverse_h_matrix, c).holds_exactly());
  }
}

TEST_CASE("bilinear sums") {
  const ModelConstant c = unit_c();
  const IdentityPair hand = bilinear_sum(qs({2}), qs({0}), {}, q(1), q(1), BilinearVariant::ml3, c);
  CHECK(hand.lhs == q(-1, 2));
  CHECK(hand.rhs == q(-1, 2));
  Gen gen(39);
  const IdentityPair empty = bilinear_sum({}, gen.set(2, c), gen.set(1, c), q(3), q(4), BilinearVariant::ml1, c);
  CHECK(empty.lhs == q(1));
  CHECK(empty.rhs == q(1));
  for (auto variant : {BilinearVariant::ml1, BilinearVariant::ml2, BilinearVariant::ml3}) {
    for (std::size_t l = 0; l <= 3; ++l) {
      const ModelConstant cc = gen.c();
      const ParamSet u = gen.set(1, cc, {}, "u");
      const ParamSet v = gen.set(1, cc, u, "v");
      const ParamSet xi = gen.set(l, cc, u.concat(v).concat(u.shift(-cc.value())), "xi");
      CHECK(bilinear_sum(xi, u, v, gen.nonzero(), gen.nonzero(), variant, cc).holds_exactly());
    }
  }
}

TEST_CASE("determinant lemma and summation formula") {
  Gen gen(40);
  {
    const ModelConstant c = gen.c();
    const ParamSet u = gen.set(2, c);
    const ParamSet eta = gen.set(2, c, u);
    const Scalar z = gen.avoiding({1});
    const LemmaDeterminants d = detlemma_matrices(u, eta, gen.polynomial(2), gen.polynomial(2), {}, z, c);
    CHECK(d.free_columns == 2);
    CHECK(d.det_first == (z - q(1)).pow(2) * d.det_second);
  }
  {
    const ModelConstant c = gen.c();
    const ParamSet u = gen.set(3, c);
    const ParamSet eta = gen.set(2, c, u);
    const Scalar z = gen.avoiding({1});
    const LemmaDeterminants d =
        detlemma_matrices(u, eta, gen.polynomial(2), gen.polynomial(2), {gen.polynomial(3)}, z, c);
    CHECK(d.free_columns == 2);
    CHECK(d.det_first == (z - q(1)).pow(2) * d.det_second);
  }
  {
    // phi1 = 0 keeps only the empty part I.
    const ModelConstant c = gen.c();
    const ParamSet u = gen.set(3, c);
    const Evaluator zero = [](const Scalar& x) { return x.zero_like(); };
    const Evaluator phi2 = gen.polynomial(2);
    std::vector<Evaluator> cols{gen.polynomial(3), gen.polynomial(3), gen.polynomial(3)};
    const IdentityPair p = sum_formula(u, cols, zero, phi2, c);
    const Kernels kr(c);
    Scalar direct = kr.delta(u) * determinant(Matrix::build(3, 3, [&](std::size_t j, std::size_t k) {
                      return cols[k](u[j]);
                    }),
                                              q(1));
    for (const auto& x : u) direct *= phi2(x);
    CHECK(p.lhs == direct);
    CHECK(p.holds_exactly());
  }
  for (std::size_t N = 0; N <= 3; ++N) {
    const ModelConstant c = gen.c();
    const ParamSet u = gen.set(N, c);
    std::vector<Evaluator> cols;
    for (std::size_t k = 0; k < N; ++k) cols.push_back(gen.polynomial(N));
    CHECK(sum_formula(u, cols, gen.polynomial(2), gen.polynomial(2), c).holds_exactly());
  }
}

TEST_CASE("float MID representations agree") {
  PrecisionScope scope(256);
  Gen gen(41, fl(0.0));
  for (std::size_t n = 0; n <= 3; ++n) {
    for (std::size_t m = 0; m <= 3; ++m) {
      const MidInput in = random_input(gen, n, m, true);
      CHECK(close(mid_dual(in), mid_direct(in), 1e-60));
      CHECK(close(mid_eta_n(in), mid_direct(in), 1e-60));
    }
  }
}
