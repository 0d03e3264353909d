#include "bessel_lab/bessel_series.hpp"

#include <map>
#include <mutex>
#include <string>

#include "bessel_lab/combinatorics.hpp"
#include "bessel_lab/errors.hpp"

namespace bessel_lab {

namespace {

std::mutex g_power_mutex;
std::map<int, std::vector<Rational>> g_power_cache;
std::vector<Rational> g_base;  // guarded by g_power_mutex

const Rational& base_coefficient(int n) {
  while (static_cast<int>(g_base.size()) <= n) g_base.push_back(i0k0_coefficient(static_cast<int>(g_base.size())));
  return g_base[n];
}

void check_even(int k) {
  if (k < 2 || k % 2 != 0) throw DomainError("expected an even k >= 2, got " + std::to_string(k));
}

}  // namespace

Rational i0k0_coefficient(int n) {
  BigInt df = double_factorial(2L * n - 1);
  BigInt den = factorial(n);
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), 5UL * static_cast<unsigned long>(n));
  return Rational(df * df * df, den);
}

std::vector<Rational> bessel_power_coefficients(int k, int n_terms) {
  check_even(k);
  std::lock_guard lock(g_power_mutex);
  auto& f = g_power_cache[k];
  if (f.empty()) f.emplace_back(1);
  // Power recurrence for f = b^alpha with b_0 = 1:
  // n f_n = sum_{j=1}^{n} ((alpha+1) j - n) b_j f_{n-j}.
  const Rational alpha(k / 2);
  for (int n = static_cast<int>(f.size()); n < n_terms; ++n) {
    Rational acc;
    for (int j = 1; j <= n; ++j) acc += ((alpha + 1) * Rational(j) - Rational(n)) * base_coefficient(j) * f[n - j];
    f.push_back(acc / Rational(n));
  }
  return {f.begin(), f.begin() + n_terms};
}

RamifiedLaurentSeries bessel_product_series(int k, int order) {
  check_even(k);
  if (order < 0) throw DomainError("negative order");
  auto f = bessel_power_coefficients(k, order);
  if (k % 4 == 0) {
    RamifiedLaurentSeries s(1, k / 4 + order);
    for (int n = 0; n < order; ++n) s.set(k / 4 + n, f[n]);
    return s;
  }
  RamifiedLaurentSeries s(2, k / 2 + 2 * order);
  for (int n = 0; n < order; ++n) s.set(k / 2 + 2 * n, f[n]);
  return s;
}

Rational gamma_constant(int k, int i) {
  if (k % 4 != 0 || k <= 0 || i < k / 4) return Rational(0);
  return bessel_power_coefficients(k, i - k / 4 + 1).back();
}

Rational gamma_prime_or_zero(int k, const Rational& idx) {
  check_even(k);
  if (k % 4 != 2) throw DomainError("gamma_prime_constant needs k = 2 mod 4");
  Rational n = idx - Rational(k, 4);
  if (!n.is_integer()) throw DomainError("index must be a half-integer");
  if (n.sign() < 0) return Rational(0);
  return bessel_power_coefficients(k, static_cast<int>(n.num().get_si()) + 1).back();
}

Rational gamma_prime_constant(int k, const Rational& idx) {
  if (idx < Rational(k, 4)) throw DomainError("gamma_prime_constant: index below k/4");
  return gamma_prime_or_zero(k, idx);
}

std::vector<Rational> bessel_asymptotic_coefficients(int nu, int n_terms) {
  std::vector<Rational> out;
  Rational a(1);
  for (int n = 0; n < n_terms; ++n) {
    if (n > 0) a = a * Rational(4L * nu * nu - (2L * n - 1) * (2L * n - 1)) / Rational(8L * n);
    out.push_back(a);
  }
  return out;
}

}  // namespace bessel_lab
