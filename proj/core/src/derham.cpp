#include "bessel_lab/derham.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "bessel_lab/bessel_series.hpp"
#include "bessel_lab/combinatorics.hpp"
#include "bessel_lab/errors.hpp"

namespace bessel_lab {

namespace {

std::mutex g_pq_mutex;
std::map<int, std::unique_ptr<PQFamily>> g_pq_cache;

std::mutex g_solution_mutex;
std::map<std::tuple<int, int, bool>, InfinitySolution> g_solution_cache;

Rational sign_power(int e) { return (e % 2 == 0) ? Rational(1) : Rational(-1); }

Rational lookup(const std::map<int, Rational>& m, int key) {
  auto it = m.find(key);
  return it == m.end() ? Rational(0) : it->second;
}

// Series of the exact Laurent polynomial op(w^e), cut at trunc.
RamifiedLaurentSeries apply_to_monomial(const ThetaOperator& op, int e, int trunc) {
  RamifiedLaurentSeries s(1, trunc);
  for (const auto& [shift, v] : op.apply_monomial(Rational(e)))
    if (e + shift < trunc) s.set(e + shift, s.coefficient(e + shift) + v);
  return s;
}

// Solution with mu_k known through w^k'. smid only reads the nu entries, which
// do not see the resonant free coefficient, so it skips the normalization.
const InfinitySolution& cached_solution(int k, int i, bool normalized) {
  std::lock_guard lock(g_solution_mutex);
  const bool resonant = k % 4 == 0 && i > k / 4;
  auto key = std::make_tuple(k, i, resonant && normalized);
  auto it = g_solution_cache.find(key);
  if (it == g_solution_cache.end()) {
    InfinitySolution sol = resonant && normalized
                               ? solve_at_infinity(k, i, k_prime(k), resonant_free_coefficient(k, i))
                               : solve_at_infinity(k, i, k_prime(k));
    it = g_solution_cache.emplace(key, std::move(sol)).first;
  }
  return it->second;
}

}  // namespace

const PQFamily& build_pq(int k) {
  if (k < 1) throw DomainError("build_pq: k must be positive");
  std::lock_guard lock(g_pq_mutex);
  auto& slot = g_pq_cache[k];
  if (slot) return *slot;
  auto fam = std::make_unique<PQFamily>();
  fam->k = k;
  fam->P.resize(k + 1);
  fam->Q.resize(k + 1);
  const ThetaOperator theta = ThetaOperator::theta();
  const ThetaOperator w = ThetaOperator::w_power(1);
  fam->P[0] = ThetaOperator();
  fam->Q[0] = ThetaOperator::constant(Rational(1));
  fam->P[1] = ThetaOperator::constant(Rational(1));
  fam->Q[1] = theta;
  for (int a = 2; a <= k; ++a) {
    Rational inv_a(1, a);
    Rational c(k + 2 - a, a);
    fam->P[a] = theta * fam->P[a - 1] * inv_a - w * fam->P[a - 2] * c;
    fam->Q[a] = theta * fam->Q[a - 1] * inv_a - w * fam->Q[a - 2] * c;
  }
  slot = std::move(fam);
  return *slot;
}

ThetaOperator solver_lhs(int k) {
  const auto& f = build_pq(k);
  return ThetaOperator::theta() * f.Q[k] - ThetaOperator::w_power(1) * f.Q[k - 1];
}

ThetaOperator solver_rhs(int k) {
  const auto& f = build_pq(k);
  return ThetaOperator::theta() * f.P[k] - ThetaOperator::w_power(1) * f.P[k - 1];
}

Rational leading_symbol(int k, int ell) {
  ThetaOperator lhs = solver_lhs(k);
  return lhs.symbol(lhs.min_order(), Rational(ell));
}

Rational leading_symbol_closed_form(int k, int ell) {
  if (k % 2 != 0) throw DomainError("closed form only for even k");
  const int kp = k_prime(k);
  Rational v = sign_power(kp) * pow2(kp) * Rational(kp + 1 + 2 * ell) *
               Rational(factorial(kp + 1)) / Rational(double_factorial(k - 1));
  return -v;
}

InfinitySolution solve_at_infinity(int k, int i, int max_exponent, const Rational& free_coefficient) {
  const int kp = k_prime(k);
  if (i < 1 || i > kp) {
    throw DomainError("solve_at_infinity: i=" + std::to_string(i) + " outside [1, " + std::to_string(kp) + "]");
  }
  const auto& fam = build_pq(k);
  const ThetaOperator lhs = solver_lhs(k);
  const ThetaOperator rhs_op = solver_rhs(k);
  const int o = lhs.min_order();
  const int q_order = fam.Q[k].min_order();
  const int trunc = max_exponent - q_order + 1;

  std::map<int, Rational> rhs;
  for (const auto& [shift, v] : rhs_op.apply_monomial(Rational(1 - i))) rhs[1 - i + shift] -= v;

  const bool resonant = (k % 4 == 0) && (i > k / 4);
  std::map<int, Rational> gamma_part;
  if (resonant) {
    for (const auto& [shift, v] : rhs_op.apply_monomial(Rational(1 - k / 4))) gamma_part[1 - k / 4 + shift] += v;
  }

  const int ell_start = (1 - i) + rhs_op.min_order() - o;
  InfinitySolution sol;
  sol.k = k;
  sol.i = i;
  sol.mu0 = RamifiedLaurentSeries(1, std::max(trunc, ell_start));

  std::map<int, Rational> acc;  // L applied to the part of mu_0 found so far
  std::optional<Rational> gamma;
  for (int ell = ell_start; ell < trunc; ++ell) {
    const int e = ell + o;
    Rational target = lookup(rhs, e);
    Rational g = lookup(gamma_part, e);
    if (!g.is_zero()) {
      if (!gamma && ell != -k / 4) throw ConvergenceError("resonant term met before l = -k/4");
      if (gamma) target += *gamma * g;
    }
    Rational lam = lhs.symbol(o, Rational(ell));
    Rational m;
    if (lam.is_zero()) {
      if (resonant && ell == -k / 4) {
        gamma = (lookup(acc, e) - target) / g;
        m = free_coefficient;
      } else if (lookup(acc, e) != target) {
        throw ConvergenceError("local system at infinity has no solution at l=" + std::to_string(ell));
      }
    } else {
      m = (target - lookup(acc, e)) / lam;
    }
    if (m.is_zero()) continue;
    sol.mu0.set(ell, m);
    for (const auto& [shift, v] : lhs.apply_monomial(Rational(ell))) acc[ell + shift] += m * v;
  }
  if (resonant && !gamma) throw ConvergenceError("resonant coefficient was not determined");

  RamifiedLaurentSeries qpart = fam.Q[k].apply(sol.mu0);
  RamifiedLaurentSeries muk = qpart + apply_to_monomial(fam.P[k], 1 - i, qpart.trunc());
  if (gamma) muk -= apply_to_monomial(fam.P[k], 1 - k / 4, qpart.trunc()) * *gamma;
  sol.muk = muk;
  sol.gamma = gamma;
  return sol;
}

RamifiedLaurentSeries mu_component(const InfinitySolution& sol, int a) {
  const int k = sol.k;
  if (a < 0 || a > k) throw DomainError("mu_component: a out of range");
  const auto& fam = build_pq(k);
  RamifiedLaurentSeries q = fam.Q[a].apply(sol.mu0);
  RamifiedLaurentSeries mu = q + apply_to_monomial(fam.P[a], 1 - sol.i, q.trunc());
  if (sol.gamma) mu -= apply_to_monomial(fam.P[a], 1 - k / 4, q.trunc()) * *sol.gamma;
  return mu;
}

namespace {

// sum_n sign^n c_n s^n, n < terms
RamifiedLaurentSeries s_series(const std::vector<Rational>& c, bool alternate, const Rational& scale) {
  RamifiedLaurentSeries s(1, static_cast<int>(c.size()));
  for (size_t n = 0; n < c.size(); ++n) s.set(static_cast<int>(n), (alternate && n % 2 == 1 ? -c[n] : c[n]) * scale);
  return s;
}

// f(w) -> f(4 s^2)
RamifiedLaurentSeries substitute_w(const RamifiedLaurentSeries& f) {
  RamifiedLaurentSeries out(1, 2 * f.trunc());
  for (const auto& [e, c] : f.terms()) out.set(2 * e, c * (e >= 0 ? Rational(4).pow(e) : Rational(1, 4).pow(-e)));
  return out;
}

}  // namespace

RamifiedLaurentSeries flat_middle_component(const InfinitySolution& sol) {
  const int k = sol.k;
  if (k % 2 != 0) throw DomainError("flat_middle_component needs even k");
  const int half = k / 2;
  const int terms = 2 * k + 8;
  // Asymptotic series of the normalized I0, K0, I0' = I1, K0' = -K1.
  const auto a0 = bessel_asymptotic_coefficients(0, terms);
  const auto a1 = bessel_asymptotic_coefficients(1, terms);
  const RamifiedLaurentSeries i0 = s_series(a0, true, Rational(1));
  const RamifiedLaurentSeries k0 = s_series(a0, false, Rational(1));
  const RamifiedLaurentSeries i0d = s_series(a1, true, Rational(1));
  const RamifiedLaurentSeries k0d = s_series(a1, false, Rational(-1));
  auto powers = [k](const RamifiedLaurentSeries& f) {
    std::vector<RamifiedLaurentSeries> out{f.pow(0)};
    for (int n = 1; n <= k; ++n) out.push_back(out.back() * f);
    return out;
  };
  const auto i0p = powers(i0), k0p = powers(k0), i0dp = powers(i0d), k0dp = powers(k0d);
  RamifiedLaurentSeries total;
  bool first = true;
  for (int a = 0; a <= k; ++a) {
    // v0 = 2 (K0 e0 + I0 e1bar), v1 = t (K0' e0 + I0' e1bar); p factors e0
    // from v0^(k-a) and q = k/2 - p from v1^a. Each I-type/K-type pair
    // contributes 1/(2t).
    RamifiedLaurentSeries ca(1, terms);
    for (int p = std::max(0, half - a); p <= std::min(k - a, half); ++p) {
      const int q = half - p;
      Rational c = Rational(binomial(k - a, p)) * Rational(binomial(a, q));
      ca += k0p[p] * i0p[k - a - p] * k0dp[q] * i0dp[a - q] * c;
    }
    ca = ca.shifted(half - a) * (pow2(k - a) * pow2(-half));
    RamifiedLaurentSeries term = substitute_w(mu_component(sol, a)) * ca;
    if (first) {
      total = term;
      first = false;
    } else {
      total += term;
    }
  }
  return total;
}

Rational resonant_free_coefficient(int k, int i) {
  if (!(k % 4 == 0 && i > k / 4 && i <= k_prime(k))) throw DomainError("resonant_free_coefficient: not a resonant index");
  const int max_exponent = k_prime(k) + k / 4 + 3;
  const Rational c0 = flat_middle_component(solve_at_infinity(k, i, max_exponent, Rational(0))).coefficient(0);
  const Rational c1 = flat_middle_component(solve_at_infinity(k, i, max_exponent, Rational(1))).coefficient(0);
  if (c1 == c0) throw ConvergenceError("free coefficient does not move the constant term");
  return -c0 / (c1 - c0);
}

std::vector<int> middle_indices(int k) {
  std::vector<int> idx;
  for (int i = 1; i <= k_prime(k); ++i)
    if (!(k % 4 == 0 && i == k / 4)) idx.push_back(i);
  return idx;
}

ExactMatrix smid_matrix(int k) {
  if (k < 1) throw DomainError("smid_matrix: k must be positive");
  const auto idx = middle_indices(k);
  const Rational sign = sign_power(k + 1);
  ExactMatrix s(idx.size(), idx.size());
  for (size_t a = 0; a < idx.size(); ++a) {
    const int i = idx[a];
    const auto& sol = cached_solution(k, i, false);
    for (size_t b = 0; b < idx.size(); ++b) {
      const int j = idx[b];
      Rational v = sol.muk.coefficient(j);
      if (k % 4 == 0 && i > k / 4 && j > k / 4) v -= gamma_constant(k, j) * sol.muk.coefficient(k / 4);
      s(a, b) = sign * v;
    }
  }
  return s;
}

ExactMatrix sfull_matrix(int k) {
  if (k < 1) throw DomainError("sfull_matrix: k must be positive");
  const int kp = k_prime(k);
  const Rational sign = sign_power(k + 1);
  ExactMatrix s(kp + 1, kp + 1);
  s(0, 0) = Rational(1);
  for (int i = 1; i <= kp; ++i) {
    if (k % 4 == 0 && i == k / 4) {
      for (int j = k / 4; j <= kp; ++j) s(i, j) = (j == k / 4) ? Rational(-1) : -gamma_constant(k, j);
      continue;
    }
    const auto& sol = cached_solution(k, i, true);
    for (int j = 0; j <= kp; ++j) s(i, j) = sign * sol.muk.coefficient(j);
  }
  return s;
}

Rational smid_antidiagonal_closed_form(int k, int i) {
  const int kp = k_prime(k);
  if (k % 2 == 1) {
    return sign_power(kp) * pow2(kp) * Rational(factorial(kp)) / Rational(double_factorial(k));
  }
  return sign_power(kp + 1) * Rational(double_factorial(k - 1)) /
         (pow2(kp) * Rational(kp + 1 - 2 * i) * Rational(factorial(kp + 1)));
}

Rational det_smid_closed_form(int k) {
  const int kp = k_prime(k);
  if (kp == 0) return Rational(1);
  if (k % 2 == 1) {
    Rational base = pow2(kp) * Rational(factorial(kp)) / Rational(double_factorial(k));
    return sign_power(kp * (kp + 1) / 2) * base.pow(kp);
  }
  if (k % 4 == 2) {
    Rational num = Rational(double_factorial(k - 1)).pow(kp);
    Rational den = (pow2(kp) * Rational(factorial(kp + 1))).pow(kp) *
                   Rational(double_factorial(kp - 1)).pow(2);
    return num / den;
  }
  const int kpp = k / 4 - 1;
  Rational base = Rational(double_factorial(k - 1)) / (pow2(kp + 1) * Rational(factorial(kp + 1)));
  return base.pow(kp - 1) / Rational(factorial(kpp)).pow(2);
}

}  // namespace bessel_lab
