#pragma once

#include "bessel_lab/rational.hpp"

namespace bessel_lab {

// B_n with the convention B_1 = -1/2. Memoised; safe to call concurrently.
Rational bernoulli(int n);

// m! and m!!, both equal to 1 for m <= 0.
BigInt factorial(long m);
BigInt double_factorial(long m);

// 2^e for any integer e.
Rational pow2(long e);

// Zero whenever a lies outside [0, n].
BigInt binomial(long n, long a);

// (-1)^(a-1) / (n a) * C(n, a) for 1 <= a <= n.
Rational c_coeff(int n, int a);

// C(m, r) B_r / m for 0 <= r < m.
Rational theta_coeff(int m, int r);

// -B_m / m.
Rational theta_tilde(int m);

}  // namespace bessel_lab
