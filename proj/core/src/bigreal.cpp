#include "bessel_lab/bigreal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <ostream>

#include "bessel_lab/errors.hpp"

namespace bessel_lab {

namespace {

mpfr_prec_t max_prec(const BigReal& a, const BigReal& b) { return std::max(a.precision(), b.precision()); }

}  // namespace

mpfr_prec_t bits_for_digits(int digits) {
  return static_cast<mpfr_prec_t>(std::ceil(std::max(digits, 1) * 3.3219280948873623)) + 8;
}

BigReal::BigReal(mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_zero(v_, 1);
}

BigReal::BigReal(long v, mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_si(v_, v, MPFR_RNDN);
}

BigReal::BigReal(const Rational& v, mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_q(v_, v.raw().get_mpq_t(), MPFR_RNDN);
}

BigReal::BigReal(const std::string& decimal, mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  if (mpfr_set_str(v_, decimal.c_str(), 10, MPFR_RNDN) != 0) {
    mpfr_clear(v_);
    throw DomainError("not a decimal number: '" + decimal + "'");
  }
}

BigReal BigReal::from_double(double v, mpfr_prec_t prec) {
  BigReal r(prec);
  mpfr_set_d(r.v_, v, MPFR_RNDN);
  return r;
}

BigReal::BigReal(const BigReal& o) {
  mpfr_init2(v_, o.precision());
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigReal::BigReal(BigReal&& o) noexcept {
  mpfr_init2(v_, o.precision());
  mpfr_swap(v_, o.v_);
}

BigReal& BigReal::operator=(const BigReal& o) {
  if (this != &o) {
    mpfr_set_prec(v_, o.precision());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

BigReal& BigReal::operator=(BigReal&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

BigReal::~BigReal() { mpfr_clear(v_); }

BigReal BigReal::with_precision(mpfr_prec_t prec) const {
  BigReal r(prec);
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

long BigReal::exponent2() const {
  if (!mpfr_regular_p(v_)) return std::numeric_limits<long>::min() / 2;
  return mpfr_get_exp(v_);
}

std::string BigReal::to_string(int digits) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return sign() > 0 ? "inf" : "-inf";
  char* buf = nullptr;
  if (mpfr_asprintf(&buf, "%.*Re", std::max(digits - 1, 0), v_) < 0) return "?";
  std::unique_ptr<char, decltype(&mpfr_free_str)> holder(buf, &mpfr_free_str);
  return std::string(buf);
}

BigReal& BigReal::operator+=(const BigReal& o) {
  if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator-=(const BigReal& o) {
  if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator*=(const BigReal& o) {
  if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator/=(const BigReal& o) {
  if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator*=(long c) {
  mpfr_mul_si(v_, v_, c, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator/=(long c) {
  mpfr_div_si(v_, v_, c, MPFR_RNDN);
  return *this;
}

BigReal BigReal::operator-() const {
  BigReal r(precision());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

BigReal operator+(const BigReal& a, const BigReal& b) {
  BigReal r(max_prec(a, b));
  mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigReal operator-(const BigReal& a, const BigReal& b) {
  BigReal r(max_prec(a, b));
  mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigReal operator*(const BigReal& a, const BigReal& b) {
  BigReal r(max_prec(a, b));
  mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigReal operator/(const BigReal& a, const BigReal& b) {
  BigReal r(max_prec(a, b));
  mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

std::partial_ordering operator<=>(const BigReal& a, const BigReal& b) {
  if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.v_, b.v_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

BigReal abs(const BigReal& x) {
  BigReal r(x.precision());
  mpfr_abs(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

BigReal sqrt(const BigReal& x) {
  BigReal r(x.precision());
  mpfr_sqrt(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

BigReal exp(const BigReal& x) {
  BigReal r(x.precision());
  mpfr_exp(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

BigReal log(const BigReal& x) {
  BigReal r(x.precision());
  mpfr_log(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

BigReal pow(const BigReal& x, long e) {
  BigReal r(x.precision());
  mpfr_pow_si(r.raw(), x.raw(), e, MPFR_RNDN);
  return r;
}

BigReal mul_2exp(const BigReal& x, long e) {
  BigReal r(x.precision());
  mpfr_mul_2si(r.raw(), x.raw(), e, MPFR_RNDN);
  return r;
}

BigReal const_pi(mpfr_prec_t prec) {
  BigReal r(prec);
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}

BigReal const_euler(mpfr_prec_t prec) {
  BigReal r(prec);
  mpfr_const_euler(r.raw(), MPFR_RNDN);
  return r;
}

BigReal relative_difference(const BigReal& a, const BigReal& b) {
  BigReal d = abs(a - b);
  BigReal s = std::max(abs(a), abs(b), [](const BigReal& x, const BigReal& y) { return x < y; });
  if (s.is_zero()) return d;
  return d / s;
}

double neg_log10(const BigReal& x) {
  if (x.is_zero()) return std::numeric_limits<double>::infinity();
  BigReal a = abs(x);
  BigReal l(53);
  mpfr_log10(l.raw(), a.raw(), MPFR_RNDN);
  return -l.to_double();
}

std::ostream& operator<<(std::ostream& os, const BigReal& x) {
  return os << x.to_string(static_cast<int>(x.precision() * 0.30103));
}

BigComplex& BigComplex::operator+=(const BigComplex& o) {
  re += o.re;
  im += o.im;
  return *this;
}

BigComplex& BigComplex::operator-=(const BigComplex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

BigComplex& BigComplex::operator*=(const BigComplex& o) {
  BigReal r = re * o.re - im * o.im;
  BigReal i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

BigComplex& BigComplex::operator/=(const BigComplex& o) {
  BigReal d = o.re * o.re + o.im * o.im;
  if (d.is_zero()) throw DomainError("complex division by zero");
  BigReal r = (re * o.re + im * o.im) / d;
  BigReal i = (im * o.re - re * o.im) / d;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

BigReal BigComplex::abs() const {
  BigReal r(std::max(re.precision(), im.precision()));
  mpfr_hypot(r.raw(), re.raw(), im.raw(), MPFR_RNDN);
  return r;
}

BigComplex i_power(long e, mpfr_prec_t prec) {
  switch (((e % 4) + 4) % 4) {
    case 0: return {BigReal(1, prec), BigReal(prec)};
    case 1: return {BigReal(prec), BigReal(1, prec)};
    case 2: return {BigReal(-1, prec), BigReal(prec)};
    default: return {BigReal(prec), BigReal(-1, prec)};
  }
}

}  // namespace bessel_lab
