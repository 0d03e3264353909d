#include "bessel_lab/bessel_functions.hpp"

#include <cmath>

#include "bessel_lab/errors.hpp"

namespace bessel_lab {

namespace {

constexpr double kLog2E = 1.4426950408889634;

void check_positive(const BigReal& t) {
  if (t.sign() <= 0 || !t.is_finite()) throw DomainError("Bessel argument must be positive");
}

// Power series for nu in {0, 1}. The K part cancels against e^t growth, so the
// sums are carried with 2 t log2(e) extra bits.
BesselValues series(const BigReal& t_in, mpfr_prec_t prec, int nu) {
  const double td = t_in.to_double();
  const mpfr_prec_t wp = prec + static_cast<mpfr_prec_t>(2.0 * td * kLog2E) + 32;
  BigReal t = t_in.with_precision(wp);
  BigReal half = mul_2exp(t, -1);
  BigReal q = half * half;
  BigReal lg = const_euler(wp) + log(half);

  // term_n = q^n / (n! (n+nu)!)
  BigReal term(1, wp);
  BigReal isum(1, wp);  // sum term_n
  BigReal hsum(wp);     // nu=0: sum H_n term_n;  nu=1: sum (psi(n+1)+psi(n+2)) term_n
  BigReal harm(wp);     // H_n
  BigReal weight(wp);
  BigReal two_gamma = mul_2exp(const_euler(wp), 1);
  if (nu == 1) hsum = BigReal(1, wp) - two_gamma;  // psi(1) + psi(2)
  for (long n = 1;; ++n) {
    mpfr_mul(term.raw(), term.raw(), q.raw(), MPFR_RNDN);
    mpfr_div_si(term.raw(), term.raw(), n * (n + nu), MPFR_RNDN);
    mpfr_set_si(weight.raw(), 1, MPFR_RNDN);
    mpfr_div_si(weight.raw(), weight.raw(), n, MPFR_RNDN);
    mpfr_add(harm.raw(), harm.raw(), weight.raw(), MPFR_RNDN);
    mpfr_add(isum.raw(), isum.raw(), term.raw(), MPFR_RNDN);
    if (nu == 0) {
      mpfr_set(weight.raw(), harm.raw(), MPFR_RNDN);
    } else {
      // psi(n+1) + psi(n+2) = 2 H_n + 1/(n+1) - 2 gamma
      mpfr_set_si(weight.raw(), 1, MPFR_RNDN);
      mpfr_div_si(weight.raw(), weight.raw(), n + 1, MPFR_RNDN);
      mpfr_sub(weight.raw(), weight.raw(), two_gamma.raw(), MPFR_RNDN);
      mpfr_add(weight.raw(), weight.raw(), harm.raw(), MPFR_RNDN);
      mpfr_add(weight.raw(), weight.raw(), harm.raw(), MPFR_RNDN);
    }
    mpfr_fma(hsum.raw(), weight.raw(), term.raw(), hsum.raw(), MPFR_RNDN);
    if (n > 2 && term.exponent2() < isum.exponent2() - static_cast<long>(wp)) break;
  }
  BesselValues out{BigReal(prec), BigReal(prec)};
  if (nu == 0) {
    out.i0 = isum.with_precision(prec);
    out.k0 = (hsum - lg * isum).with_precision(prec);
  } else {
    BigReal i1 = isum * half;
    out.i0 = i1.with_precision(prec);
    BigReal k1 = BigReal(1, wp) / t + (lg - const_euler(wp)) * i1 - mul_2exp(t, -2) * hsum;
    out.k0 = k1.with_precision(prec);
  }
  return out;
}

// Hankel expansions with a_n(nu) = prod_{j<=n} (4 nu^2 - (2j-1)^2) / (n! 8^n),
// summed until the terms stop decreasing or drop below 2^-prec.
BesselValues asymptotic(const BigReal& t_in, mpfr_prec_t prec, int nu) {
  const mpfr_prec_t wp = prec + 32;
  BigReal t = t_in.with_precision(wp);
  BigReal term(1, wp);
  BigReal ksum(1, wp);
  BigReal isum(1, wp);
  BigReal eps = mul_2exp(BigReal(1, wp), -static_cast<long>(prec) - 8);
  BigReal prev_abs(1, wp);
  bool converged = false;
  for (long n = 1; n < 100000; ++n) {
    term *= 4L * nu * nu - (2 * n - 1) * (2 * n - 1);
    term /= 8 * n;
    term /= t;
    BigReal a = abs(term);
    if (a > prev_abs) break;
    prev_abs = a;
    ksum += term;
    if (n % 2 == 1) {
      isum -= term;
    } else {
      isum += term;
    }
    if (a < eps) {
      converged = true;
      break;
    }
  }
  if (!converged) throw ConvergenceError("asymptotic Bessel expansion used below its range");
  BigReal pi = const_pi(wp);
  BigReal e = exp(t);
  BesselValues out{BigReal(prec), BigReal(prec)};
  out.k0 = (sqrt(pi / mul_2exp(t, 1)) / e * ksum).with_precision(prec);
  out.i0 = (e / sqrt(mul_2exp(pi * t, 1)) * isum).with_precision(prec);
  return out;
}

BesselValues evaluate(const BigReal& t, mpfr_prec_t prec, BesselMethod method, int nu) {
  check_positive(t);
  if (method == BesselMethod::kAuto) {
    method = t.to_double() >= asymptotic_threshold(prec) ? BesselMethod::kAsymptotic : BesselMethod::kSeries;
  }
  return method == BesselMethod::kSeries ? series(t, prec, nu) : asymptotic(t, prec, nu);
}

}  // namespace

double asymptotic_threshold(mpfr_prec_t prec) {
  return std::max(30.0, 0.5 * static_cast<double>(prec + 16) * 0.6931471805599453 + 5.0);
}

BesselValues bessel_i0_k0(const BigReal& t, mpfr_prec_t prec, BesselMethod method) {
  return evaluate(t, prec, method, 0);
}

BesselValues bessel_i1_k1(const BigReal& t, mpfr_prec_t prec, BesselMethod method) {
  return evaluate(t, prec, method, 1);
}

BesselSmallArg bessel_small_arg(const BigReal& t_in, mpfr_prec_t prec) {
  check_positive(t_in);
  if (t_in > BigReal(1, 53)) throw DomainError("bessel_small_arg needs t <= 1");
  const mpfr_prec_t wp = prec + 32;
  BigReal t = t_in.with_precision(wp);
  BigReal half = mul_2exp(t, -1);
  BigReal q = half * half;
  BigReal lg = const_euler(wp) + log(half);
  BigReal term(1, wp);
  BigReal harm(wp);
  BigReal i0m1(wp);
  BigReal delta(wp);  // sum (H_n - L) term_n
  BigReal eps = mul_2exp(BigReal(1, wp), -static_cast<long>(wp));
  for (long n = 1;; ++n) {
    term *= q;
    term /= n * n;
    harm += BigReal(1, wp) / BigReal(n, wp);
    i0m1 += term;
    delta += (harm - lg) * term;
    if (term < i0m1 * eps) break;
  }
  return {i0m1.with_precision(prec), lg.with_precision(prec), delta.with_precision(prec)};
}

BigReal bessel_i0(const BigReal& t, mpfr_prec_t prec) { return bessel_i0_k0(t, prec).i0; }
BigReal bessel_k0(const BigReal& t, mpfr_prec_t prec) { return bessel_i0_k0(t, prec).k0; }

}  // namespace bessel_lab
