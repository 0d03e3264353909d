#pragma once

#include <mpfr.h>

#include <compare>
#include <iosfwd>
#include <string>

#include "bessel_lab/rational.hpp"

namespace bessel_lab {

// Bits needed to carry `digits` significant decimal digits.
mpfr_prec_t bits_for_digits(int digits);

// Owning wrapper around mpfr_t. Binary operations produce a result at the
// larger of the two operand precisions; rounding is always to nearest.
class BigReal {
 public:
  explicit BigReal(mpfr_prec_t prec = 64);
  BigReal(long v, mpfr_prec_t prec);
  BigReal(const Rational& v, mpfr_prec_t prec);
  BigReal(const std::string& decimal, mpfr_prec_t prec);
  static BigReal from_double(double v, mpfr_prec_t prec);

  BigReal(const BigReal& o);
  BigReal(BigReal&& o) noexcept;
  BigReal& operator=(const BigReal& o);
  BigReal& operator=(BigReal&& o) noexcept;
  ~BigReal();

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  // Rounds the value to a new precision.
  BigReal with_precision(mpfr_prec_t prec) const;

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  // Binary exponent e with 0.5 <= |x| / 2^e < 1; very negative for zero.
  long exponent2() const;
  // Scientific notation with `digits` significant digits.
  std::string to_string(int digits) const;

  BigReal& operator+=(const BigReal& o);
  BigReal& operator-=(const BigReal& o);
  BigReal& operator*=(const BigReal& o);
  BigReal& operator/=(const BigReal& o);
  BigReal& operator*=(long c);
  BigReal& operator/=(long c);
  BigReal operator-() const;

  friend BigReal operator+(const BigReal& a, const BigReal& b);
  friend BigReal operator-(const BigReal& a, const BigReal& b);
  friend BigReal operator*(const BigReal& a, const BigReal& b);
  friend BigReal operator/(const BigReal& a, const BigReal& b);
  friend BigReal operator*(BigReal a, long c) { return a *= c; }
  friend BigReal operator/(BigReal a, long c) { return a /= c; }

  friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const BigReal& a, const BigReal& b);

 private:
  mpfr_t v_;
};

BigReal abs(const BigReal& x);
BigReal sqrt(const BigReal& x);
BigReal exp(const BigReal& x);
BigReal log(const BigReal& x);
BigReal pow(const BigReal& x, long e);
BigReal mul_2exp(const BigReal& x, long e);

BigReal const_pi(mpfr_prec_t prec);
BigReal const_euler(mpfr_prec_t prec);

// |a - b| / max(|a|, |b|), or |a - b| when both vanish.
BigReal relative_difference(const BigReal& a, const BigReal& b);
// -log10 |x| as a double, +inf for zero.
double neg_log10(const BigReal& x);

std::ostream& operator<<(std::ostream& os, const BigReal& x);

struct BigComplex {
  BigReal re;
  BigReal im;

  BigComplex() = default;
  explicit BigComplex(mpfr_prec_t prec) : re(prec), im(prec) {}
  BigComplex(BigReal r, BigReal i) : re(std::move(r)), im(std::move(i)) {}
  static BigComplex real(const BigReal& r) { return {r, BigReal(r.precision())}; }

  mpfr_prec_t precision() const { return re.precision(); }

  BigComplex& operator+=(const BigComplex& o);
  BigComplex& operator-=(const BigComplex& o);
  BigComplex& operator*=(const BigComplex& o);
  BigComplex& operator/=(const BigComplex& o);
  BigComplex operator-() const { return {-re, -im}; }
  friend BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
  friend BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
  friend BigComplex operator*(BigComplex a, const BigComplex& b) { return a *= b; }
  friend BigComplex operator/(BigComplex a, const BigComplex& b) { return a /= b; }

  BigReal abs() const;
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
};

// i^e.
BigComplex i_power(long e, mpfr_prec_t prec);

}  // namespace bessel_lab
