#include "bessel_lab/betti.hpp"

#include <string>

#include "bessel_lab/combinatorics.hpp"
#include "bessel_lab/derham.hpp"
#include "bessel_lab/errors.hpp"

namespace bessel_lab {

namespace {

Rational sign_power(long e) { return (e % 2 == 0) ? Rational(1) : Rational(-1); }

Rational bernoulli_over_factorial(int n) { return bernoulli(n) / Rational(factorial(n)); }

// 3!! 5!! ... (2m+1)!!
BigInt odd_double_factorial_product(int m) {
  BigInt p = 1;
  for (int a = 1; a <= m; ++a) p *= double_factorial(2 * a + 1);
  return p;
}

Rational binomial_product(int k, int from, int to) {
  BigInt p = 1;
  for (int a = from; a <= to; ++a) p *= binomial(k, a);
  return Rational(p);
}

}  // namespace

Rational bpairing_entry(int k, int i, int j) {
  const int kp = k_prime(k);
  if (i < 0 || i > kp || j < 0 || j > k / 2) {
    throw DomainError("bpairing_entry: index (" + std::to_string(i) + ", " + std::to_string(j) +
                      ") out of range for k=" + std::to_string(k));
  }
  if (i == 0) return j == 0 ? Rational(-1) : Rational(0);
  const int n = k - i - j + 1;
  return sign_power(k - i) * Rational(factorial(k - i) * factorial(k - j), factorial(k)) *
         bernoulli_over_factorial(n);
}

ExactMatrix bfull_matrix(int k, const std::vector<int>& beta_columns) {
  const int kp = k_prime(k);
  ExactMatrix b(kp + 1, beta_columns.size());
  for (int i = 0; i <= kp; ++i)
    for (size_t c = 0; c < beta_columns.size(); ++c) b(i, c) = bpairing_entry(k, i, beta_columns[c]);
  return b;
}

std::vector<int> betti_middle_indices(int k) {
  std::vector<int> idx;
  for (int i = (k % 4 == 0) ? 2 : 1; i <= k_prime(k); ++i) idx.push_back(i);
  return idx;
}

ExactMatrix bmid_matrix(int k) {
  const auto idx = betti_middle_indices(k);
  ExactMatrix b(idx.size(), idx.size());
  for (size_t a = 0; a < idx.size(); ++a)
    for (size_t c = 0; c < idx.size(); ++c) b(a, c) = bpairing_entry(k, idx[a], idx[c]);
  return b;
}

ExactMatrix bmid_unprimed_matrix(int k) {
  if (k % 4 != 0) throw DomainError("bmid_unprimed_matrix needs 4 | k");
  const int kp = k_prime(k);
  ExactMatrix b(kp, kp);
  for (int i = 1; i <= kp; ++i)
    for (int j = 2; j <= k / 2; ++j) b(i - 1, j - 2) = bpairing_entry(k, i, j);
  return b;
}

Rational det_bmid_closed_form(int k) {
  const int kp = k_prime(k);
  const Rational kf(factorial(k));
  if (k % 2 == 1) return (kf * binomial_product(k, 1, kp)).inverse();
  if (k % 4 == 2) return (kf * Rational(kp + 1) * binomial_product(k, 2, kp)).inverse();
  return (Rational(k / 4) * Rational(factorial(kp)).pow(2) * binomial_product(k, 2, kp)).inverse();
}

Rational det_bmid_unprimed_closed_form(int k) {
  if (k % 4 != 0) throw DomainError("det_bmid_unprimed_closed_form needs 4 | k");
  // Negative: the Bareiss determinant is -1 times the bracket for every 4 | k up to 28.
  return -(Rational(factorial(k)) * binomial_product(k, 2, k_prime(k))).inverse();
}

ExactMatrix bernoulli_hankel(int n, int shift) {
  ExactMatrix h(n, n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) h(i - 1, j - 1) = bernoulli_over_factorial(i + j + shift);
  return h;
}

Rational det_bernoulli_hankel_closed_form(int n, int shift) {
  if (n == 0) return Rational(1);
  const Rational sq = Rational(odd_double_factorial_product(n)).pow(2);
  if (shift == 0) {
    return sign_power(static_cast<long>(n) * (n - 1) / 2) * Rational(double_factorial(2 * n + 1)) /
           (pow2(n * (n + 1)) * sq);
  }
  if (shift != 1) throw DomainError("shift must be 0 or 1");
  if (n % 2 == 1) return Rational(0);
  return sign_power(n / 2) / (pow2(n * (n + 2)) * sq);
}

ExactMatrix delta_matrix(int n) {
  ExactMatrix d(n, n);
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) d(a - 1, b - 1) = bernoulli_over_factorial(2 * a + 2 * b - 2);
  return d;
}

ExactMatrix theta_hankel_matrix(int n) {
  ExactMatrix d(n, n);
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) d(a - 1, b - 1) = bernoulli_over_factorial(2 * a + 2 * b);
  return d;
}

Rational det_delta_closed_form(int n) {
  return (pow2(2 * n * n) * Rational(odd_double_factorial_product(2 * n - 1))).inverse();
}

Rational det_theta_hankel_closed_form(int n) {
  return sign_power(n) /
         (pow2(2 * n * (n + 1)) * Rational(odd_double_factorial_product(2 * n)));
}

}  // namespace bessel_lab
