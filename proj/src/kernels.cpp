#include "bethe_overlap/kernels.hpp"

namespace bethe_overlap {

ModelConstant::ModelConstant(Scalar c) : c_(std::move(c)) {
  if (c_.is_zero()) throw InvalidArgument("model constant c must be nonzero");
}

ParamSet::ParamSet(std::vector<Scalar> elems, std::string label) : elems_(std::move(elems)), label_(std::move(label)) {
  for (std::size_t k = 1; k < elems_.size(); ++k) {
    if (elems_[k].mode() != elems_[0].mode()) throw ModeMismatch("parameter set mixes exact and floating elements");
  }
}

ParamSet::ParamSet(std::initializer_list<Scalar> elems) : ParamSet(std::vector<Scalar>(elems)) {}

ParamSet ParamSet::minus(std::size_t k) const {
  if (k >= elems_.size()) throw InvalidArgument("ParamSet::minus index out of range");
  std::vector<Scalar> out;
  out.reserve(elems_.size() - 1);
  for (std::size_t j = 0; j < elems_.size(); ++j) {
    if (j != k) out.push_back(elems_[j]);
  }
  return ParamSet(std::move(out), label_);
}

ParamSet ParamSet::shift(const Scalar& delta) const {
  std::vector<Scalar> out;
  out.reserve(elems_.size());
  for (const auto& x : elems_) out.push_back(x + delta);
  return ParamSet(std::move(out), label_);
}

ParamSet ParamSet::subset(std::span<const std::size_t> indices) const {
  std::vector<Scalar> out;
  out.reserve(indices.size());
  for (auto k : indices) out.push_back(elems_.at(k));
  return ParamSet(std::move(out), label_);
}

ParamSet ParamSet::concat(const ParamSet& other) const {
  std::vector<Scalar> out = elems_;
  out.insert(out.end(), other.elems_.begin(), other.elems_.end());
  return ParamSet(std::move(out), label_);
}

ParamSet ParamSet::with_label(std::string label) const { return ParamSet(elems_, std::move(label)); }

bool ParamSet::pairwise_distinct() const {
  for (std::size_t j = 0; j < elems_.size(); ++j) {
    for (std::size_t k = j + 1; k < elems_.size(); ++k) {
      if (elems_[j] == elems_[k]) return false;
    }
  }
  return true;
}

bool ParamSet::intersects(const ParamSet& other) const {
  for (const auto& a : elems_) {
    for (const auto& b : other.elems_) {
      if (a == b) return true;
    }
  }
  return false;
}

Scalar Kernels::g(const Scalar& u, const Scalar& v) const {
  Scalar d = u - v;
  if (d.is_zero()) throw PoleError("g(u,v) evaluated at u = v = " + u.to_string());
  return c() / d;
}

Scalar Kernels::f(const Scalar& u, const Scalar& v) const {
  Scalar d = u - v;
  if (d.is_zero()) throw PoleError("f(u,v) evaluated at u = v = " + u.to_string());
  return (d + c()) / d;
}

Scalar Kernels::h(const Scalar& u, const Scalar& v) const { return (u - v + c()) / c(); }

Scalar Kernels::inv_g(const Scalar& u, std::span<const Scalar> b) const {
  Scalar out = one();
  for (const auto& y : b) out *= (u - y) / c();
  return out;
}

Scalar Kernels::inv_g(std::span<const Scalar> a, const Scalar& v) const {
  Scalar out = one();
  for (const auto& x : a) out *= (x - v) / c();
  return out;
}

Scalar Kernels::ratio(const Scalar& num, const Scalar& den, const char* what) const {
  if (den.is_zero()) throw PoleError(std::string("pole in ") + what);
  return num / den;
}

Scalar Kernels::eval(Kernel kind, const Scalar& u, const Scalar& v) const {
  switch (kind) {
    case Kernel::g:
      return g(u, v);
    case Kernel::f:
      return f(u, v);
    case Kernel::h:
      return h(u, v);
  }
  throw InvalidArgument("unknown kernel");
}

Scalar Kernels::product(Kernel kind, std::span<const Scalar> a, std::span<const Scalar> b) const {
  Scalar out = one();
  for (const auto& x : a) {
    for (const auto& y : b) out *= eval(kind, x, y);
  }
  return out;
}

Scalar Kernels::delta(std::span<const Scalar> s) const {
  Scalar out = one();
  for (std::size_t k = 0; k < s.size(); ++k) {
    for (std::size_t j = k + 1; j < s.size(); ++j) out *= g(s[j], s[k]);
  }
  return out;
}

Scalar Kernels::delta_prime(std::span<const Scalar> s) const {
  Scalar out = one();
  for (std::size_t k = 0; k < s.size(); ++k) {
    for (std::size_t j = k + 1; j < s.size(); ++j) out *= g(s[k], s[j]);
  }
  return out;
}

KernelValues kernels(const Scalar& u, const Scalar& v, const ModelConstant& c) {
  const Kernels k(c);
  return {k.g(u, v), k.f(u, v), k.h(u, v)};
}

DeltaPair delta_products(const ParamSet& s, const ModelConstant& c) {
  const Kernels k(c);
  return {k.delta(s), k.delta_prime(s)};
}

Scalar set_product(Kernel kind, std::span<const Scalar> a, std::span<const Scalar> b, const ModelConstant& c) {
  return Kernels(c).product(kind, a, b);
}

Scalar sign_power(long k, const Scalar& like) { return like.like((k % 2 == 0) ? 1 : -1); }

}  // namespace bethe_overlap
