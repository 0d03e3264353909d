#pragma once

#include <vector>

#include "bessel_lab/rational.hpp"
#include "bessel_lab/series.hpp"

namespace bessel_lab {

// Coefficients ((2n-1)!!)^3 / (2^(5n) n!) of the expansion of 2 t I0(t) K0(t)
// in w = 4/t^2.
Rational i0k0_coefficient(int n);

// First n_terms coefficients F_0, F_1, ... of F(w)^(k/2) for even k, where F
// is the series above. Cached per k.
std::vector<Rational> bessel_power_coefficients(int k, int n_terms);

// w^(k/4) F(w)^(k/2), the expansion of 2^k (I0 K0)^(k/2) at infinity, with
// `order` terms of F. Ramification 2 when k = 2 mod 4. Rejects odd k.
RamifiedLaurentSeries bessel_product_series(int k, int order);

// a_n(nu) = prod_(m=1..n) (4 nu^2 - (2m-1)^2) / (n! 8^n), n < n_terms: the
// coefficients of K_nu(t) ~ sqrt(pi/2t) e^-t sum a_n t^-n (and of I_nu with
// alternating signs).
std::vector<Rational> bessel_asymptotic_coefficients(int nu, int n_terms);

// Coefficient of w^i when 4 | k; zero below k/4 and for every other k.
Rational gamma_constant(int k, int i);

// Coefficient of w^idx for k = 2 mod 4 and half-integral idx >= k/4.
Rational gamma_prime_constant(int k, const Rational& idx);

// Same coefficient, but returns zero instead of throwing below k/4.
Rational gamma_prime_or_zero(int k, const Rational& idx);

}  // namespace bessel_lab
