#pragma once

#include <gmpxx.h>

#include <boost/multiprecision/mpfr.hpp>
#include <string>
#include <string_view>
#include <variant>

#include "bethe_overlap/errors.hpp"

namespace bethe_overlap {

using Real = boost::multiprecision::mpfr_float;

enum class ScalarMode { exact, floating };

inline constexpr unsigned kDefaultPrecisionBits = 256;

/// Decimal digits handed to MPFR for a requested binary precision.
unsigned digits10_for_bits(unsigned bits);

/// Element of Q(i).
struct GaussRational {
  mpq_class re;
  mpq_class im;
};

/// Complex number with MPFR components; `bits` is the requested precision.
struct BigComplex {
  Real re;
  Real im;
  unsigned bits = kDefaultPrecisionBits;
};

/// Sets the process-wide MPFR default precision for the lifetime of the
/// guard. Float-mode computations should run inside one so temporaries
/// created from integer literals carry the working precision.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_digits10_;
};

/// A field element: either an exact Gaussian rational or an
/// arbitrary-precision complex float. Arithmetic never mixes the two.
class Scalar {
 public:
  /// Exact zero.
  Scalar();

  static Scalar exact(const mpq_class& re, const mpq_class& im = mpq_class(0));
  static Scalar exact(long num, long den = 1);
  /// Parses "p/q" or "p" components.
  static Scalar exact(std::string_view re, std::string_view im = "0");

  static Scalar floating(const Real& re, const Real& im, unsigned bits = kDefaultPrecisionBits);
  static Scalar floating(double re, double im = 0.0, unsigned bits = kDefaultPrecisionBits);
  /// Parses decimal strings at the given precision.
  static Scalar floating(std::string_view re, std::string_view im, unsigned bits);

  ScalarMode mode() const noexcept { return is_exact() ? ScalarMode::exact : ScalarMode::floating; }
  bool is_exact() const noexcept { return std::holds_alternative<GaussRational>(value_); }
  /// 0 in exact mode.
  unsigned precision_bits() const noexcept;

  const GaussRational& as_exact() const;
  const BigComplex& as_float() const;

  /// num/den in the same mode and precision as *this.
  Scalar like(long num, long den = 1) const;
  Scalar zero_like() const { return like(0); }
  Scalar one_like() const { return like(1); }
  /// Converts an exact value into a float of the given precision.
  Scalar to_floating(unsigned bits) const;

  bool is_zero() const;
  bool is_real() const;
  Scalar conj() const;
  /// |x|^2 as a real scalar of the same mode.
  Scalar norm() const;
  /// |x| as an MPFR real (exact values are rounded at the default precision).
  Real modulus() const;
  Real real_part() const;
  Real imag_part() const;
  /// Integer power; negative exponents invert (throwing on zero).
  Scalar pow(long exponent) const;

  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);
  Scalar operator-() const;

  friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
  friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
  friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
  friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }

  /// Exact equality of values; throws ModeMismatch across modes.
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Human-readable form: "p/q+r/si" or decimal.
  std::string to_string() const;

 private:
  explicit Scalar(GaussRational v) : value_(std::move(v)) {}
  explicit Scalar(BigComplex v) : value_(std::move(v)) {}
  void require_same_mode(const Scalar& other) const;

  std::variant<GaussRational, BigComplex> value_;
};

/// |a - b| / max(|a|, |b|), or |a - b| when both vanish.
Real relative_difference(const Scalar& a, const Scalar& b);
/// |a - b| / max(|a|, |b|, scale); `scale` guards comparisons whose true value vanishes.
Real relative_difference(const Scalar& a, const Scalar& b, const Real& scale);

}  // namespace bethe_overlap
