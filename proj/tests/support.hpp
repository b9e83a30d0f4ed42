#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bethe_overlap/bethe.hpp"
#include "bethe_overlap/chain.hpp"
#include "bethe_overlap/kernels.hpp"
#include "bethe_overlap/matrix.hpp"
#include "bethe_overlap/mid.hpp"
#include "bethe_overlap/overlap.hpp"
#include "bethe_overlap/partitions.hpp"
#include "bethe_overlap/random.hpp"

namespace testing {

using namespace bethe_overlap;

inline Scalar q(long num, long den = 1) { return Scalar::exact(num, den); }
inline Scalar fl(double re, double im = 0.0, unsigned bits = 256) { return Scalar::floating(re, im, bits); }

inline ParamSet qs(std::initializer_list<long> nums) {
  std::vector<Scalar> out;
  for (long x : nums) out.push_back(q(x));
  return ParamSet(std::move(out));
}

inline ModelConstant unit_c() { return ModelConstant::unit(); }

/// |a - b| <= tol max(|a|, |b|).
inline bool close(const Scalar& a, const Scalar& b, double tol) { return relative_difference(a, b) <= Real(tol); }

// Oracle kernels written out from their defining fractions, independent of Kernels.
inline Scalar g_ref(const Scalar& u, const Scalar& v, const Scalar& c) { return c / (u - v); }
inline Scalar f_ref(const Scalar& u, const Scalar& v, const Scalar& c) { return (u - v + c) / (u - v); }
inline Scalar h_ref(const Scalar& u, const Scalar& v, const Scalar& c) { return (u - v + c) / c; }

/// Determinant by cofactor expansion along the first row.
inline Scalar laplace_det(const Matrix& m, const Scalar& one) {
  const std::size_t n = m.rows();
  if (n == 0) return one;
  if (n == 1) return m(0, 0);
  Scalar total = one.zero_like();
  for (std::size_t k = 0; k < n; ++k) {
    const Matrix minor = Matrix::build(n - 1, n - 1, [&](std::size_t r, std::size_t c) {
      return m(r + 1, c < k ? c : c + 1);
    });
    const Scalar term = m(0, k) * laplace_det(minor, one);
    if (k % 2 == 0) {
      total += term;
    } else {
      total -= term;
    }
  }
  return total;
}

/// The MID matrix entries evaluated from the oracle kernels, expanded by cofactors.
inline Scalar mid_oracle(const ParamSet& u, const ParamSet& v, const Scalar& z, const Scalar& c) {
  const std::size_t m = v.size();
  const Matrix a = Matrix::build(m, m, [&](std::size_t j, std::size_t k) {
    Scalar fu = c.one_like();
    for (const auto& x : u) fu *= f_ref(x, v[j], c);
    for (std::size_t l = 0; l < m; ++l) {
      if (l != j) fu *= f_ref(v[j], v[l], c);
    }
    Scalar entry = fu / h_ref(v[j], v[k], c);
    if (j == k) entry -= z;
    return entry;
  });
  return laplace_det(a, c.one_like());
}

/// Hand-rolled generator of test data on top of the library Rng.
class Gen {
 public:
  explicit Gen(std::uint64_t seed, Scalar like = Scalar::exact(0)) : rng_(seed), like_(std::move(like)) {}

  Rng& rng() { return rng_; }
  const Scalar& like() const { return like_; }

  Scalar scalar() { return rng_.rational(like_); }
  Scalar complex_scalar() { return rng_.rational(like_, true); }
  Scalar nonzero() {
    Scalar x = scalar();
    while (x.is_zero()) x = scalar();
    return x;
  }
  /// A draw different from every listed integer.
  Scalar avoiding(std::initializer_list<long> bad) {
    for (;;) {
      Scalar x = scalar();
      bool clash = false;
      for (long b : bad) clash = clash || x == like_.like(b);
      if (!clash) return x;
    }
  }
  ModelConstant c() { return ModelConstant(nonzero()); }
  ParamSet set(std::size_t n, const ModelConstant& c, const ParamSet& avoid = {}, const char* label = "") {
    return rng_.set(n, like_, c, avoid, false, label);
  }
  SpinChainModel model(std::size_t L, const ModelConstant& c) { return SpinChainModel::make(set(L, c, {}, "theta"), c); }
  TwistGeneral twist() {
    for (;;) {
      try {
        return TwistGeneral::from_rhos(scalar(), nonzero(), scalar(), nonzero(), nonzero());
      } catch (const DegenerateTwist&) {
      }
    }
  }
  /// Twist with rho2 = -alpha rho1.
  TwistGeneral constrained_twist(const Scalar& alpha) {
    for (;;) {
      try {
        const Scalar rho1 = nonzero();
        return TwistGeneral::from_rhos(scalar(), nonzero(), scalar(), rho1, -alpha * rho1);
      } catch (const DegenerateTwist&) {
      }
    }
  }
  /// Random polynomial of the given degree as an evaluator.
  Evaluator polynomial(std::size_t degree) {
    std::vector<Scalar> coeffs;
    for (std::size_t k = 0; k <= degree; ++k) coeffs.push_back(scalar());
    return [coeffs](const Scalar& x) {
      Scalar acc = x.zero_like();
      for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
      return acc;
    };
  }

 private:
  Rng rng_;
  Scalar like_;
};

}  // namespace testing
