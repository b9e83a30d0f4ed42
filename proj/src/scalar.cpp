#include "bethe_overlap/scalar.hpp"

#include <algorithm>
#include <cmath>

namespace bethe_overlap {

namespace {

mpq_class parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw InvalidArgument("empty rational literal");
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw InvalidArgument("malformed rational literal '" + s + "'");
  if (q.get_den() == 0) throw DivisionByZero("rational literal with zero denominator '" + s + "'");
  q.canonicalize();
  return q;
}

Real make_real(const Real& value, unsigned bits) { return Real(value, digits10_for_bits(bits)); }

bool is_zero_real(const Real& x) { return x == 0; }

}  // namespace

unsigned digits10_for_bits(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

PrecisionScope::PrecisionScope(unsigned bits) : saved_digits10_(Real::default_precision()) {
  Real::default_precision(digits10_for_bits(bits));
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_digits10_); }

Scalar::Scalar() : value_(GaussRational{mpq_class(0), mpq_class(0)}) {}

Scalar Scalar::exact(const mpq_class& re, const mpq_class& im) {
  GaussRational v{re, im};
  v.re.canonicalize();
  v.im.canonicalize();
  return Scalar(std::move(v));
}

Scalar Scalar::exact(long num, long den) {
  if (den == 0) throw DivisionByZero("exact scalar with zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return Scalar(GaussRational{q, mpq_class(0)});
}

Scalar Scalar::exact(std::string_view re, std::string_view im) {
  return Scalar(GaussRational{parse_rational(re), parse_rational(im)});
}

Scalar Scalar::floating(const Real& re, const Real& im, unsigned bits) {
  if (bits < 16) throw InvalidArgument("float precision below 16 bits");
  return Scalar(BigComplex{make_real(re, bits), make_real(im, bits), bits});
}

Scalar Scalar::floating(double re, double im, unsigned bits) {
  if (bits < 16) throw InvalidArgument("float precision below 16 bits");
  const unsigned d = digits10_for_bits(bits);
  return Scalar(BigComplex{Real(re, d), Real(im, d), bits});
}

Scalar Scalar::floating(std::string_view re, std::string_view im, unsigned bits) {
  if (bits < 16) throw InvalidArgument("float precision below 16 bits");
  const unsigned d = digits10_for_bits(bits);
  try {
    Real r(std::string(re), d);
    Real i(std::string(im), d);
    return Scalar(BigComplex{std::move(r), std::move(i), bits});
  } catch (const std::runtime_error&) {
    throw InvalidArgument("malformed decimal literal '" + std::string(re) + "', '" + std::string(im) + "'");
  }
}

unsigned Scalar::precision_bits() const noexcept {
  if (const auto* f = std::get_if<BigComplex>(&value_)) return f->bits;
  return 0;
}

const GaussRational& Scalar::as_exact() const {
  if (const auto* e = std::get_if<GaussRational>(&value_)) return *e;
  throw ModeMismatch("scalar is not exact");
}

const BigComplex& Scalar::as_float() const {
  if (const auto* f = std::get_if<BigComplex>(&value_)) return *f;
  throw ModeMismatch("scalar is not floating");
}

Scalar Scalar::like(long num, long den) const {
  if (is_exact()) return exact(num, den);
  if (den == 0) throw DivisionByZero("constant with zero denominator");
  const auto& f = std::get<BigComplex>(value_);
  const unsigned d = digits10_for_bits(f.bits);
  Real r(num, d);
  r /= den;
  return Scalar(BigComplex{std::move(r), Real(0, d), f.bits});
}

Scalar Scalar::to_floating(unsigned bits) const {
  if (!is_exact()) return floating(as_float().re, as_float().im, bits);
  const auto& e = std::get<GaussRational>(value_);
  const unsigned d = digits10_for_bits(bits);
  Real re(e.re.get_num().get_str(), d);
  re /= Real(e.re.get_den().get_str(), d);
  Real im(e.im.get_num().get_str(), d);
  im /= Real(e.im.get_den().get_str(), d);
  return Scalar(BigComplex{std::move(re), std::move(im), bits});
}

void Scalar::require_same_mode(const Scalar& other) const {
  if (value_.index() != other.value_.index()) throw ModeMismatch("exact and floating scalars mixed in one expression");
}

bool Scalar::is_zero() const {
  if (const auto* e = std::get_if<GaussRational>(&value_)) return sgn(e->re) == 0 && sgn(e->im) == 0;
  const auto& f = std::get<BigComplex>(value_);
  return is_zero_real(f.re) && is_zero_real(f.im);
}

bool Scalar::is_real() const {
  if (const auto* e = std::get_if<GaussRational>(&value_)) return sgn(e->im) == 0;
  return is_zero_real(std::get<BigComplex>(value_).im);
}

Scalar Scalar::conj() const {
  Scalar out = *this;
  if (auto* e = std::get_if<GaussRational>(&out.value_)) {
    e->im = -e->im;
  } else {
    auto& f = std::get<BigComplex>(out.value_);
    f.im = -f.im;
  }
  return out;
}

Scalar Scalar::norm() const {
  if (const auto* e = std::get_if<GaussRational>(&value_)) {
    return Scalar(GaussRational{mpq_class(e->re * e->re + e->im * e->im), mpq_class(0)});
  }
  const auto& f = std::get<BigComplex>(value_);
  Real n = f.re * f.re + f.im * f.im;
  return Scalar(BigComplex{std::move(n), Real(0, digits10_for_bits(f.bits)), f.bits});
}

Real Scalar::real_part() const {
  if (const auto* e = std::get_if<GaussRational>(&value_)) {
    Real r(e->re.get_num().get_str());
    return r / Real(e->re.get_den().get_str());
  }
  return std::get<BigComplex>(value_).re;
}

Real Scalar::imag_part() const {
  if (const auto* e = std::get_if<GaussRational>(&value_)) {
    Real r(e->im.get_num().get_str());
    return r / Real(e->im.get_den().get_str());
  }
  return std::get<BigComplex>(value_).im;
}

Real Scalar::modulus() const {
  const Real re = real_part();
  const Real im = imag_part();
  return sqrt(re * re + im * im);
}

Scalar Scalar::pow(long exponent) const {
  Scalar base = *this;
  if (exponent < 0) {
    base = one_like() / base;
    exponent = -exponent;
  }
  Scalar result = one_like();
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    exponent >>= 1;
    if (exponent > 0) base *= base;
  }
  return result;
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  require_same_mode(rhs);
  if (auto* e = std::get_if<GaussRational>(&value_)) {
    const auto& r = std::get<GaussRational>(rhs.value_);
    e->re += r.re;
    e->im += r.im;
  } else {
    auto& f = std::get<BigComplex>(value_);
    const auto& r = std::get<BigComplex>(rhs.value_);
    f.re += r.re;
    f.im += r.im;
    f.bits = std::max(f.bits, r.bits);
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  require_same_mode(rhs);
  if (auto* e = std::get_if<GaussRational>(&value_)) {
    const auto& r = std::get<GaussRational>(rhs.value_);
    e->re -= r.re;
    e->im -= r.im;
  } else {
    auto& f = std::get<BigComplex>(value_);
    const auto& r = std::get<BigComplex>(rhs.value_);
    f.re -= r.re;
    f.im -= r.im;
    f.bits = std::max(f.bits, r.bits);
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  require_same_mode(rhs);
  if (auto* e = std::get_if<GaussRational>(&value_)) {
    const auto& r = std::get<GaussRational>(rhs.value_);
    const bool lhs_real = sgn(e->im) == 0;
    const bool rhs_real = sgn(r.im) == 0;
    if (lhs_real && rhs_real) {
      e->re *= r.re;
    } else if (rhs_real) {
      e->re *= r.re;
      e->im *= r.re;
    } else if (lhs_real) {
      e->im = e->re * r.im;
      e->re *= r.re;
    } else {
      mpq_class re = e->re * r.re - e->im * r.im;
      mpq_class im = e->re * r.im + e->im * r.re;
      e->re = std::move(re);
      e->im = std::move(im);
    }
  } else {
    auto& f = std::get<BigComplex>(value_);
    const auto& r = std::get<BigComplex>(rhs.value_);
    Real re = f.re * r.re - f.im * r.im;
    Real im = f.re * r.im + f.im * r.re;
    f.re = std::move(re);
    f.im = std::move(im);
    f.bits = std::max(f.bits, r.bits);
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  require_same_mode(rhs);
  if (rhs.is_zero()) throw DivisionByZero("division by zero scalar");
  if (auto* e = std::get_if<GaussRational>(&value_)) {
    const auto& r = std::get<GaussRational>(rhs.value_);
    if (sgn(r.im) == 0) {
      e->re /= r.re;
      e->im /= r.re;
    } else {
      const mpq_class den = r.re * r.re + r.im * r.im;
      mpq_class re = (e->re * r.re + e->im * r.im) / den;
      mpq_class im = (e->im * r.re - e->re * r.im) / den;
      e->re = std::move(re);
      e->im = std::move(im);
    }
  } else {
    auto& f = std::get<BigComplex>(value_);
    const auto& r = std::get<BigComplex>(rhs.value_);
    const Real den = r.re * r.re + r.im * r.im;
    Real re = (f.re * r.re + f.im * r.im) / den;
    Real im = (f.im * r.re - f.re * r.im) / den;
    f.re = std::move(re);
    f.im = std::move(im);
    f.bits = std::max(f.bits, r.bits);
  }
  return *this;
}

Scalar Scalar::operator-() const {
  Scalar out = *this;
  if (auto* e = std::get_if<GaussRational>(&out.value_)) {
    e->re = -e->re;
    e->im = -e->im;
  } else {
    auto& f = std::get<BigComplex>(out.value_);
    f.re = -f.re;
    f.im = -f.im;
  }
  return out;
}

bool operator==(const Scalar& a, const Scalar& b) {
  a.require_same_mode(b);
  if (const auto* e = std::get_if<GaussRational>(&a.value_)) {
    const auto& r = std::get<GaussRational>(b.value_);
    return e->re == r.re && e->im == r.im;
  }
  const auto& f = std::get<BigComplex>(a.value_);
  const auto& r = std::get<BigComplex>(b.value_);
  return f.re == r.re && f.im == r.im;
}

std::string Scalar::to_string() const {
  if (const auto* e = std::get_if<GaussRational>(&value_)) {
    if (sgn(e->im) == 0) return e->re.get_str();
    std::string s = e->re.get_str();
    s += sgn(e->im) < 0 ? "-" : "+";
    s += mpq_class(abs(e->im)).get_str();
    s += "i";
    return s;
  }
  const auto& f = std::get<BigComplex>(value_);
  const auto digits = static_cast<std::streamsize>(digits10_for_bits(f.bits));
  std::string s = f.re.str(digits, std::ios_base::scientific);
  if (is_zero_real(f.im)) return s;
  s += f.im < 0 ? "-" : "+";
  s += Real(abs(f.im)).str(digits, std::ios_base::scientific);
  s += "i";
  return s;
}

Real relative_difference(const Scalar& a, const Scalar& b) {
  const Real diff = (a - b).modulus();
  const Real scale = std::max(a.modulus(), b.modulus());
  if (scale == 0) return diff;
  return diff / scale;
}

Real relative_difference(const Scalar& a, const Scalar& b, const Real& scale) {
  const Real diff = (a - b).modulus();
  const Real s = std::max({a.modulus(), b.modulus(), scale});
  if (s == 0) return diff;
  return diff / s;
}

}  // namespace bethe_overlap
