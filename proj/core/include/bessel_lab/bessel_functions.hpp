#pragma once

#include "bessel_lab/bigreal.hpp"

namespace bessel_lab {

struct BesselValues {
  BigReal i0;
  BigReal k0;
};

// Extra quantities near the origin, where K0 = -L + delta with
// L = euler_gamma + log(t/2) and delta = O(t^2 log t).
struct BesselSmallArg {
  BigReal i0_minus_one;
  BigReal log_term;
  BigReal delta;
};

enum class BesselMethod { kAuto, kSeries, kAsymptotic };

// Arguments above this use the asymptotic expansions at `prec` bits.
double asymptotic_threshold(mpfr_prec_t prec);

// I0(t) and K0(t) for t > 0, correct to about `prec` bits.
BesselValues bessel_i0_k0(const BigReal& t, mpfr_prec_t prec, BesselMethod method = BesselMethod::kAuto);

// I1(t) and K1(t), used for the Wronskian check I0 K1 + I1 K0 = 1/t.
BesselValues bessel_i1_k1(const BigReal& t, mpfr_prec_t prec, BesselMethod method = BesselMethod::kAuto);

// Only for 0 < t <= 1.
BesselSmallArg bessel_small_arg(const BigReal& t, mpfr_prec_t prec);

BigReal bessel_i0(const BigReal& t, mpfr_prec_t prec);
BigReal bessel_k0(const BigReal& t, mpfr_prec_t prec);

}  // namespace bessel_lab
