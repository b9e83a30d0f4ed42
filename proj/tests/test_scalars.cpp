#include <doctest.h>

#include "bethe_overlap/serialize.hpp"
#include "support.hpp"

using namespace testing;

TEST_CASE("kernels at hand-evaluated points") {
  const Kernels kr(unit_c());
  CHECK(kr.g(q(3), q(1)) == q(1, 2));
  CHECK(kr.f(q(3), q(1)) == q(3, 2));
  CHECK(kr.h(q(3), q(1)) == q(3));
  CHECK(kr.h(q(5), q(5)) == q(1));
  CHECK(kr.g(q(0), q(2)) == q(-1, 2));
  CHECK(kr.f(q(0), q(2)) == q(1, 2));
  CHECK(kr.h(q(0), q(2)) == q(-1));
  // f(u, v + c) = 1/f(v, u) at u = 0, v = 2.
  CHECK(kr.f(q(0), q(3)) == q(2, 3));
  CHECK(kr.f(q(2), q(0)) == q(3, 2));
  CHECK(kr.f(q(0), q(3)) * kr.f(q(2), q(0)) == q(1));
}

TEST_CASE("kernel poles raise PoleError") {
  const Kernels kr(unit_c());
  CHECK_THROWS_AS(kr.g(q(1), q(1)), PoleError);
  CHECK_THROWS_AS(kr.f(q(1), q(1)), PoleError);
  CHECK_THROWS_AS(kernels(q(2), q(2), unit_c()), PoleError);
  CHECK_THROWS_AS(ModelConstant(q(0)), Error);
}

TEST_CASE("Delta products of small sets") {
  const Kernels kr(unit_c());
  CHECK(kr.delta(qs({0, 2})) == q(1, 2));
  CHECK(kr.delta_prime(qs({0, 2})) == q(-1, 2));
  CHECK(kr.delta(ParamSet{}) == q(1));
  CHECK(kr.delta_prime(ParamSet{}) == q(1));
  CHECK(kr.delta(qs({0, 2, 5})) == q(1, 30));
  CHECK(kr.delta_prime(qs({0, 2, 5})) == q(-1, 30));
  const DeltaPair d = delta_products(qs({0, 2, 5}), unit_c());
  CHECK(d.delta == q(1, 30));
  CHECK(d.delta_prime == q(-1, 30));
}

TEST_CASE("set products follow the empty-set convention") {
  const Kernels kr(unit_c());
  CHECK(kr.f(q(7), ParamSet{}) == q(1));
  CHECK(kr.f(ParamSet{}, ParamSet{}) == q(1));
  CHECK(kr.f(qs({2}), q(0)) == q(3, 2));
  CHECK(kr.f(qs({0, 2}), qs({5, 7})) == q(64, 175));
  CHECK(set_product(Kernel::f, qs({0, 2}), qs({5, 7}), unit_c()) == q(64, 175));
  CHECK(kr.inv_g(q(3), qs({1, 3})) == q(0));
}

TEST_CASE("kernel symmetries on random exact points") {
  Gen gen(11);
  for (int i = 0; i < 200; ++i) {
    const ModelConstant c = gen.c();
    const Kernels kr(c);
    const Kernels neg(c.negated());
    const ParamSet uv = gen.set(2, c);
    const Scalar& u = uv[0];
    const Scalar& v = uv[1];
    for (Kernel k : {Kernel::g, Kernel::f, Kernel::h}) {
      CHECK(neg.eval(k, u, v) == kr.eval(k, v, u));
      CHECK(kr.eval(k, -u, -v) == kr.eval(k, v, u));
    }
    CHECK(kr.f(u, v) == q(1) + kr.g(u, v));
    CHECK(kr.h(u, v) == kr.f(u, v) / kr.g(u, v));
    CHECK(kr.g(u, v) == -kr.g(v, u));
    CHECK(kr.f(u, v + c.value()) * kr.f(v, u) == q(1));
    CHECK(kr.g(u, v) == g_ref(u, v, c.value()));
  }
}

TEST_CASE("Delta' differs from Delta by (-1)^{n(n-1)/2}") {
  Gen gen(12);
  for (std::size_t n = 0; n <= 5; ++n) {
    const ModelConstant c = gen.c();
    const Kernels kr(c);
    const ParamSet s = gen.set(n, c);
    const long pairs = static_cast<long>(n * (n - 1) / 2);
    CHECK(kr.delta_prime(s) == sign_power(pairs, q(1)) * kr.delta(s));
  }
}

TEST_CASE("Scalar arithmetic and modes") {
  CHECK(q(1, 2) + q(1, 3) == q(5, 6));
  CHECK(Scalar::exact("3/4", "-1/2").conj() == Scalar::exact("3/4", "1/2"));
  CHECK(Scalar::exact("0", "1").pow(2) == q(-1));
  CHECK(q(2).pow(-3) == q(1, 8));
  CHECK(Scalar::exact("3", "4").norm() == q(25));
  CHECK_THROWS_AS(q(1) / q(0), DivisionByZero);
  CHECK_THROWS_AS(q(0).pow(-1), DivisionByZero);
  CHECK_THROWS_AS((void)(q(1) + fl(1.0)), ModeMismatch);
  CHECK_THROWS_AS((void)(q(1) == fl(1.0)), ModeMismatch);
  CHECK(q(3).is_real());
  CHECK_FALSE(Scalar::exact("0", "1").is_real());
  const Scalar x = fl(0.5, 0.0, 128);
  CHECK(x.precision_bits() == 128);
  CHECK(x.like(1, 4) == fl(0.25, 0.0, 128));
  CHECK(q(1, 3).to_floating(256).mode() == ScalarMode::floating);
}

TEST_CASE("Scalar JSON round trip") {
  const Scalar x = Scalar::exact("3/2", "-7/5");
  const Json j = scalar_to_json(x);
  CHECK(j["re"] == "3/2");
  CHECK(j["im"] == "-7/5");
  CHECK(scalar_from_json(j, ScalarMode::exact, 0) == x);
  CHECK(scalar_to_json(q(3, 2))["im"] == "0/1");
  CHECK(scalar_from_json(Json("5/4"), ScalarMode::exact, 0) == q(5, 4));
  CHECK(scalar_from_json(Json(3), ScalarMode::exact, 0) == q(3));
  CHECK_THROWS_AS(scalar_from_json(Json("0.5"), ScalarMode::exact, 0), ConfigError);
  {
    PrecisionScope scope(256);
    CHECK(close(scalar_from_json(Json("1/3"), ScalarMode::floating, 256), q(1, 3).to_floating(256), 1e-70));
    CHECK(scalar_from_json(Json("0.25"), ScalarMode::floating, 256) == fl(0.25));
  }
  const ParamSet s = params_from_json(Json::array({"1", "2/3"}), ScalarMode::exact, 0, "u");
  CHECK(s == ParamSet{q(1), q(2, 3)});
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
}

TEST_CASE("determinant agrees with cofactor expansion") {
  Gen gen(13);
  for (std::size_t n = 0; n <= 5; ++n) {
    for (int i = 0; i < 5; ++i) {
      const Matrix m = Matrix::build(n, n, [&](std::size_t, std::size_t) { return gen.scalar(); });
      CHECK(determinant(m, q(1)) == laplace_det(m, q(1)));
    }
  }
  Gen complex_gen(14);
  const Matrix m = Matrix::build(4, 4, [&](std::size_t, std::size_t) { return complex_gen.complex_scalar(); });
  CHECK(determinant(m, q(1)) == laplace_det(m, q(1)));
}

TEST_CASE("float determinant matches the exact one") {
  PrecisionScope scope(256);
  Gen gen(15);
  for (std::size_t n = 1; n <= 5; ++n) {
    const Matrix m = Matrix::build(n, n, [&](std::size_t, std::size_t) { return gen.scalar(); });
    const Matrix mf = Matrix::build(n, n, [&](std::size_t r, std::size_t c) { return m(r, c).to_floating(256); });
    CHECK(close(determinant(mf, fl(1.0)), determinant(m, q(1)).to_floating(256), 1e-60));
  }
}

TEST_CASE("determinant size cap, inverse and solve") {
  const Matrix big = Matrix::identity(4, q(1));
  CHECK_THROWS_AS(determinant(big, q(1), 3), SizeLimitExceeded);
  Gen gen(16);
  const Matrix m = Matrix::build(3, 3, [&](std::size_t, std::size_t) { return gen.nonzero(); });
  if (!determinant(m, q(1)).is_zero()) {
    CHECK(m * inverse(m) == Matrix::identity(3, q(1)));
    const Vector b{q(1), q(2), q(3)};
    CHECK(matvec(m, solve(m, b)) == b);
  }
  CHECK_THROWS_AS(inverse(Matrix::zeros(2, 2, q(0))), SingularMatrix);
}

TEST_CASE("Rng is reproducible and respects rejections") {
  Rng a(99);
  Rng b(99);
  for (int i = 0; i < 50; ++i) CHECK(a.rational(q(0)) == b.rational(q(0)));
  Gen gen(100);
  for (int i = 0; i < 50; ++i) {
    const ModelConstant c = gen.c();
    const ParamSet avoid = gen.set(2, c);
    const ParamSet s = gen.set(4, c, avoid);
    const ParamSet all = s.concat(avoid);
    for (std::size_t j = 0; j < s.size(); ++j) {
      for (std::size_t k = 0; k < all.size(); ++k) {
        if (j == k) continue;
        const Scalar d = s[j] - all[k];
        CHECK_FALSE(d.is_zero());
        CHECK(d != c.value());
        CHECK(d != -c.value());
      }
    }
  }
  for (int i = 0; i < 200; ++i) {
    const long x = a.uniform(-3, 3);
    CHECK(x >= -3);
    CHECK(x <= 3);
  }
}
