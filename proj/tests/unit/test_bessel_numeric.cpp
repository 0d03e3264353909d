#include <gtest/gtest.h>

#include "bessel_lab/bessel_functions.hpp"
#include "bessel_lab/bigreal.hpp"
#include "bessel_lab/errors.hpp"
#include "bessel_lab/moments.hpp"
#include "bessel_lab/quadrature.hpp"

using namespace bessel_lab;

namespace {

BigReal num(const char* s, mpfr_prec_t prec) { return BigReal(std::string(s), prec); }

// I0(t) = (1/pi) int_0^pi exp(t cos u) du by the trapezoid rule, which is
// spectrally accurate for this periodic integrand.
BigReal i0_trapezoid(const BigReal& t, int n, mpfr_prec_t prec) {
  BigReal pi = const_pi(prec);
  BigReal sum(0, prec);
  for (int m = 0; m <= n; ++m) {
    BigReal u = pi * static_cast<long>(m) / static_cast<long>(n);
    BigReal c(prec);
    mpfr_cos(c.raw(), u.raw(), MPFR_RNDN);
    BigReal e = exp(t * c);
    if (m == 0 || m == n) e /= 2L;
    sum += e;
  }
  return sum / static_cast<long>(n);
}

// K0(t) = int_0^inf exp(-t cosh u) du, trapezoid rule on [0, U].
BigReal k0_trapezoid(const BigReal& t, int n, double upper, mpfr_prec_t prec) {
  BigReal h = BigReal::from_double(upper, prec) / static_cast<long>(n);
  BigReal sum(0, prec);
  for (int m = 0; m <= n; ++m) {
    BigReal u = h * static_cast<long>(m);
    BigReal ch(prec);
    mpfr_cosh(ch.raw(), u.raw(), MPFR_RNDN);
    BigReal e = exp(-(t * ch));
    if (m == 0) e /= 2L;
    sum += e;
  }
  return sum * h;
}

void expect_close(const BigReal& a, const BigReal& b, int digits) {
  BigReal rel = relative_difference(a, b);
  EXPECT_GT(neg_log10(rel), digits) << a.to_string(digits + 5) << " vs " << b.to_string(digits + 5);
}

}  // namespace

TEST(Bessel, AgreesWithIntegralRepresentations) {
  const mpfr_prec_t prec = bits_for_digits(40);
  for (const char* ts : {"0.25", "1", "3.5", "12"}) {
    BigReal t = num(ts, prec);
    BesselValues v = bessel_i0_k0(t, prec);
    expect_close(v.i0, i0_trapezoid(t, 200, prec), 35);
    expect_close(v.k0, k0_trapezoid(t, 800, 8.0, prec), 30);
  }
}

TEST(Bessel, WronskianAtFiftyAndHundredDigits) {
  for (int digits : {50, 100}) {
    const mpfr_prec_t prec = bits_for_digits(digits);
    BigReal t = num("0.05", prec);
    for (int n = 0; n < 10; ++n) {
      BesselValues a = bessel_i0_k0(t, prec);
      BesselValues b = bessel_i1_k1(t, prec);
      BigReal w = (a.i0 * b.k0 + b.i0 * a.k0) * t;
      expect_close(w, BigReal(1, prec), digits - 5);
      t *= 2L;
    }
  }
  for (const char* ts : {"0.5", "1", "5", "20"}) {
    const mpfr_prec_t prec = bits_for_digits(50);
    BigReal t = num(ts, prec);
    BesselValues a = bessel_i0_k0(t, prec);
    BesselValues b = bessel_i1_k1(t, prec);
    expect_close((a.i0 * b.k0 + b.i0 * a.k0) * t, BigReal(1, prec), 45);
  }
}

TEST(Bessel, SeriesAndAsymptoticBranchesAgree) {
  const mpfr_prec_t prec = bits_for_digits(20);
  const mpfr_prec_t high = bits_for_digits(60);
  BigReal t = num("40", high);
  BesselValues s = bessel_i0_k0(t, high, BesselMethod::kSeries);
  BesselValues a = bessel_i0_k0(t.with_precision(prec), prec, BesselMethod::kAsymptotic);
  expect_close(s.i0, a.i0, 18);
  expect_close(s.k0, a.k0, 18);
}

TEST(Bessel, Limits) {
  const mpfr_prec_t prec = bits_for_digits(30);
  BigReal small = num("1e-8", prec);
  EXPECT_LT(abs(bessel_i0(small, prec) - BigReal(1, prec)), num("1e-16", prec));
  for (long t : {50L, 100L}) {
    BigReal x(t, prec);
    BesselValues v = bessel_i0_k0(x, prec);
    BigReal p = v.i0 * v.k0 * x * 2L;
    BigReal lead = BigReal(1, prec) + BigReal(1, prec) / (x * x * 8L);
    EXPECT_LT(abs(p - lead), BigReal(1, prec) / (x * x * x * x));
  }
  EXPECT_THROW(bessel_i0(BigReal(0, prec), prec), DomainError);
  EXPECT_THROW(bessel_k0(BigReal(-1, prec), prec), DomainError);
}

TEST(Quadrature, PolynomialAndLogSingularity) {
  const mpfr_prec_t prec = bits_for_digits(40);
  auto r = tanh_sinh([](const BigReal& x) { return x * x; }, BigReal(0, prec), BigReal(1, prec), prec, 35);
  expect_close(r.value, BigReal(Rational(1, 3), prec), 34);
  // int_0^1 log x dx = -1
  auto l = tanh_sinh([](const BigReal& x) { return log(x); }, BigReal(0, prec), BigReal(1, prec), prec, 35);
  expect_close(l.value, BigReal(-1, prec), 34);
}

TEST(Moments, KnownClosedForms) {
  const int digits = 50;
  const mpfr_prec_t prec = bits_for_digits(digits + 5);
  BigReal pi = const_pi(prec);
  MomentValue v = ikm(3, 1, 1, digits);
  EXPECT_GE(v.certified_digits, digits);
  expect_close(v.value, pi / (sqrt(BigReal(3, prec)) * 3L), digits);
  expect_close(ikm(2, 0, 1, digits).value, BigReal(Rational(1, 2), prec), digits);
  // int K0^2 t^3 = 1/3 and int I0 K0 t^... use the K0^2 Mellin transform:
  // int K0(t)^2 t^(s-1) = sqrt(pi) Gamma(s/2)^3 / (4 Gamma((s+1)/2)); s = 4 gives 1/3.
  expect_close(ikm(2, 0, 3, digits).value, BigReal(Rational(1, 3), prec), digits);
  expect_close(ikm_reg_minus1(4, 1, digits).value, pow(pi, 4) / 120L, digits);
}

TEST(Moments, PrecisionRefinement) {
  for (auto [k, i, c] : {std::tuple{5, 1, 3}, std::tuple{6, 2, 1}, std::tuple{7, 3, 5}}) {
    BigReal a = ikm(k, i, c, 30).value;
    BigReal b = ikm(k, i, c, 40).value;
    EXPECT_GT(neg_log10(relative_difference(a, b)), 28) << k << i << c;
  }
  BigReal r30 = ikm_reg_half(8, 3, 30).value;
  BigReal r40 = ikm_reg_half(8, 3, 40).value;
  EXPECT_GT(neg_log10(relative_difference(r30, r40)), 28);
}

TEST(Moments, SegmentSplitConsistency) {
  for (const auto& m : {ikm_integrand(5, 2, 3), reg_minus1_integrand(5, 1), reg_half_integrand(6, 2)}) {
    MomentValue base = evaluate_moments({m}, 30).front();
    for (long cut : {2L, 3L}) {
      MomentValue split = evaluate_moment_with_cut(m, cut, 30);
      EXPECT_GT(neg_log10(relative_difference(base.value, split.value)), 28);
    }
  }
}

TEST(Moments, Positivity) {
  for (int k = 2; k <= 9; ++k)
    for (int i = 0; 2 * i < k; ++i)
      for (int c : {1, 3}) EXPECT_GT(ikm(k, i, c, 20).value.sign(), 0) << k << " " << i << " " << c;
}

TEST(Moments, RegularizedHalfMatchesCountertermForm) {
  for (auto [k, j] : {std::pair{6, 2}, std::pair{8, 3}}) {
    BigReal value = ikm_reg_half(k, j, 30).value;
    BigReal e1 = abs(reg_half_counterterm_form(k, j, 40, 30) - value);
    BigReal e2 = abs(reg_half_counterterm_form(k, j, 160, 30) - value);
    EXPECT_LT(e2 * 2L, e1) << k;
    EXPECT_LT(e2, BigReal(Rational(1, 20), 64) * abs(value)) << k;
  }
}

TEST(Moments, CompactSupportDispatch) {
  const int digits = 30;
  expect_close(ikm_cp(6, 1, 1, digits).value, ikm(6, 1, 1, digits).value, digits);
  expect_close(ikm_cp(8, 1, 1, digits).value, ikm(8, 1, 1, digits).value, digits);
  BigReal combo = ikm(8, 1, 5, digits).value - ikm(8, 1, 3, digits).value / 2L;
  expect_close(ikm_cp(8, 1, 3, digits).value, combo, digits - 2);
  expect_close(ikm_cp(6, 3, 2, digits).value, ikm_reg_half(6, 2, digits).value, digits);
}

TEST(Moments, DomainChecks) {
  EXPECT_THROW(ikm(4, 2, 1, 20), DomainError);
  EXPECT_THROW(ikm(4, 3, 1, 20), DomainError);
  EXPECT_THROW(ikm_reg_minus1(5, 3, 20), DomainError);
  EXPECT_THROW(ikm_reg_half(8, 1, 20), DomainError);
  EXPECT_THROW(ikm_reg_half(7, 2, 20), DomainError);
  EXPECT_THROW(ikm(3, 1, 1, 3), DomainError);
  EXPECT_EQ(moment_kind_from_string(to_string(MomentKind::kRegHalf)), MomentKind::kRegHalf);
  EXPECT_THROW(moment_kind_from_string("bogus"), DomainError);
}
