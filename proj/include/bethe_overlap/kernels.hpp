#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "bethe_overlap/scalar.hpp"

namespace bethe_overlap {

/// The R-matrix constant c. Never zero.
class ModelConstant {
 public:
  explicit ModelConstant(Scalar c);
  /// c = 1 in exact mode.
  static ModelConstant unit() { return ModelConstant(Scalar::exact(1)); }

  const Scalar& value() const noexcept { return c_; }
  ScalarMode mode() const noexcept { return c_.mode(); }
  /// The same model with c -> -c.
  ModelConstant negated() const { return ModelConstant(-c_); }

 private:
  Scalar c_;
};

/// Ordered tuple of parameters (u-bar, v-bar, eta-bar, theta-bar, ...).
/// Order is significant: it fixes row/column indexing of determinants.
class ParamSet {
 public:
  ParamSet() = default;
  explicit ParamSet(std::vector<Scalar> elems, std::string label = {});
  ParamSet(std::initializer_list<Scalar> elems);

  std::size_t size() const noexcept { return elems_.size(); }
  bool empty() const noexcept { return elems_.empty(); }
  const Scalar& operator[](std::size_t k) const { return elems_.at(k); }
  const std::string& label() const noexcept { return label_; }
  auto begin() const noexcept { return elems_.begin(); }
  auto end() const noexcept { return elems_.end(); }
  const std::vector<Scalar>& elems() const noexcept { return elems_; }
  operator std::span<const Scalar>() const noexcept { return elems_; }  // NOLINT(google-explicit-constructor)

  /// The set with element k removed.
  ParamSet minus(std::size_t k) const;
  /// Every element shifted by `delta`.
  ParamSet shift(const Scalar& delta) const;
  /// Elements at the given positions, in the given order.
  ParamSet subset(std::span<const std::size_t> indices) const;
  /// {*this, other} in that order.
  ParamSet concat(const ParamSet& other) const;
  ParamSet with_label(std::string label) const;

  bool pairwise_distinct() const;
  /// True if some element of *this equals some element of `other`.
  bool intersects(const ParamSet& other) const;

  friend bool operator==(const ParamSet& a, const ParamSet& b) { return a.elems_ == b.elems_; }

 private:
  std::vector<Scalar> elems_;
  std::string label_;
};

enum class Kernel { g, f, h };

/// The three rational kernels of the model, bound to a constant c:
///   g(u,v) = c/(u-v),  f(u,v) = 1 + g(u,v),  h(u,v) = f/g = (u-v+c)/c.
/// Set arguments denote products over all elements (double products for
/// two sets); an empty set contributes 1.
class Kernels {
 public:
  explicit Kernels(ModelConstant c) : c_(std::move(c)) {}

  const ModelConstant& constant() const noexcept { return c_; }
  const Scalar& c() const noexcept { return c_.value(); }

  Scalar g(const Scalar& u, const Scalar& v) const;
  Scalar f(const Scalar& u, const Scalar& v) const;
  Scalar h(const Scalar& u, const Scalar& v) const;

  Scalar g(std::span<const Scalar> a, std::span<const Scalar> b) const { return product(Kernel::g, a, b); }
  Scalar f(std::span<const Scalar> a, std::span<const Scalar> b) const { return product(Kernel::f, a, b); }
  Scalar h(std::span<const Scalar> a, std::span<const Scalar> b) const { return product(Kernel::h, a, b); }
  Scalar g(const Scalar& u, std::span<const Scalar> b) const { return product(Kernel::g, {&u, 1}, b); }
  Scalar f(const Scalar& u, std::span<const Scalar> b) const { return product(Kernel::f, {&u, 1}, b); }
  Scalar h(const Scalar& u, std::span<const Scalar> b) const { return product(Kernel::h, {&u, 1}, b); }
  Scalar g(std::span<const Scalar> a, const Scalar& v) const { return product(Kernel::g, a, {&v, 1}); }
  Scalar f(std::span<const Scalar> a, const Scalar& v) const { return product(Kernel::f, a, {&v, 1}); }
  Scalar h(std::span<const Scalar> a, const Scalar& v) const { return product(Kernel::h, a, {&v, 1}); }

  /// 1/g over a set, computed as a product of (u - x)/c (no pole at u = x).
  Scalar inv_g(const Scalar& u, std::span<const Scalar> b) const;
  Scalar inv_g(std::span<const Scalar> a, const Scalar& v) const;
  /// num / den, raising PoleError (not DivisionByZero) when den vanishes.
  Scalar ratio(const Scalar& num, const Scalar& den, const char* what) const;

  Scalar eval(Kernel kind, const Scalar& u, const Scalar& v) const;
  Scalar product(Kernel kind, std::span<const Scalar> a, std::span<const Scalar> b) const;

  /// Delta(s) = prod_{k<j} g(s_j, s_k).
  Scalar delta(std::span<const Scalar> s) const;
  /// Delta'(s) = prod_{k<j} g(s_k, s_j).
  Scalar delta_prime(std::span<const Scalar> s) const;

  Scalar one() const { return c().one_like(); }
  Scalar zero() const { return c().zero_like(); }

 private:
  ModelConstant c_;
};

struct KernelValues {
  Scalar g;
  Scalar f;
  Scalar h;
};

/// g, f and h at (u, v). Throws PoleError when u == v.
KernelValues kernels(const Scalar& u, const Scalar& v, const ModelConstant& c);

struct DeltaPair {
  Scalar delta;
  Scalar delta_prime;
};

DeltaPair delta_products(const ParamSet& s, const ModelConstant& c);

Scalar set_product(Kernel kind, std::span<const Scalar> a, std::span<const Scalar> b, const ModelConstant& c);

/// (-1)^k as a scalar shaped like `like`.
Scalar sign_power(long k, const Scalar& like);

}  // namespace bethe_overlap
