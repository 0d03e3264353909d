#include "bessel_lab/combinatorics.hpp"

#include <mutex>
#include <string>
#include <vector>

#include "bessel_lab/errors.hpp"

namespace bessel_lab {

namespace {

std::mutex g_bernoulli_mutex;
std::vector<Rational> g_bernoulli{Rational(1)};

}  // namespace

Rational bernoulli(int n) {
  if (n < 0) throw DomainError("bernoulli: negative index");
  std::lock_guard lock(g_bernoulli_mutex);
  // sum_{r=0}^{m} C(m+1, r) B_r = 0
  for (int m = static_cast<int>(g_bernoulli.size()); m <= n; ++m) {
    if (m > 1 && m % 2 == 1) {
      g_bernoulli.emplace_back(0);
      continue;
    }
    Rational acc;
    for (int r = 0; r < m; ++r) {
      if (g_bernoulli[r].is_zero()) continue;
      acc += Rational(binomial(m + 1, r)) * g_bernoulli[r];
    }
    g_bernoulli.push_back(-acc / Rational(m + 1));
  }
  return g_bernoulli[n];
}

BigInt factorial(long m) {
  BigInt out = 1;
  if (m > 0) mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(m));
  return out;
}

BigInt double_factorial(long m) {
  BigInt out = 1;
  if (m > 0) mpz_2fac_ui(out.get_mpz_t(), static_cast<unsigned long>(m));
  return out;
}

Rational pow2(long e) {
  BigInt p = 1;
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rational(BigInt(1), p) : Rational(p);
}

BigInt binomial(long n, long a) {
  BigInt out = 0;
  if (n < 0 || a < 0 || a > n) return out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(a));
  return out;
}

Rational c_coeff(int n, int a) {
  if (a < 1 || a > n) {
    throw DomainError("c_coeff: a=" + std::to_string(a) + " outside [1, " + std::to_string(n) + "]");
  }
  Rational v(binomial(n, a), BigInt(static_cast<long>(n) * a));
  return (a % 2 == 1) ? v : -v;
}

Rational theta_coeff(int m, int r) {
  if (m < 1 || r < 0 || r >= m) {
    throw DomainError("theta_coeff: need 0 <= r < m, got m=" + std::to_string(m) +
                      " r=" + std::to_string(r));
  }
  return Rational(binomial(m, r)) * bernoulli(r) / Rational(m);
}

Rational theta_tilde(int m) {
  if (m < 1) throw DomainError("theta_tilde: m must be positive");
  return -bernoulli(m) / Rational(m);
}

}  // namespace bessel_lab
