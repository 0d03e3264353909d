#pragma once

#include <optional>
#include <vector>

#include "bessel_lab/exact_matrix.hpp"
#include "bessel_lab/series.hpp"
#include "bessel_lab/theta_operator.hpp"

namespace bessel_lab {

// k' = floor((k-1)/2).
inline int k_prime(int k) { return (k - 1) / 2; }

// Operators with mu_a = P_a(w^(1-i)) + Q_a(mu_0), indices 0..k.
struct PQFamily {
  int k = 0;
  std::vector<ThetaOperator> P;
  std::vector<ThetaOperator> Q;
};

// Cached per k.
const PQFamily& build_pq(int k);

// L = theta Q_k - w Q_(k-1) and R = theta P_k - w P_(k-1): the local system at
// infinity reads L(mu_0) = -R(w^(1-i)).
ThetaOperator solver_lhs(int k);
ThetaOperator solver_rhs(int k);

// Leading symbol of L: L^(o)(w^l) = lambda(l) w^(l+o), o = L.min_order().
Rational leading_symbol(int k, int ell);
// Closed form of the same for even k:
// -(-2)^k' (k'+1+2 ell) (k'+1)! / (k-1)!!.
Rational leading_symbol_closed_form(int k, int ell);

struct InfinitySolution {
  int k = 0;
  int i = 0;
  RamifiedLaurentSeries mu0;
  RamifiedLaurentSeries muk;
  // Set only for 4 | k and i > k/4, where the symbol of L vanishes at
  // l = -k/4 and the right-hand side picks up -gamma w^(1-k/4).
  std::optional<Rational> gamma;
};

// Solves for mu_0 from the lowest exponent upward and returns mu_k known at
// least through w^max_exponent. In the resonant case the coefficient of mu_0 at
// l = -k/4 is not determined by the equation and is set to free_coefficient.
InfinitySolution solve_at_infinity(int k, int i, int max_exponent,
                                   const Rational& free_coefficient = Rational(0));

// mu_a = P_a(w^(1-i) - gamma w^(1-k/4)) + Q_a(mu_0), the coefficient of u_a.
RamifiedLaurentSeries mu_component(const InfinitySolution& sol, int a);

// The coefficient of (e_0 e_1bar)^(k/2) in sum_a mu_a u_a for even k, as a
// series in s = 1/t (w = 4 s^2), built from the asymptotic expansions of
// I0, K0 and their derivatives. It equals binom(k, k/2) xi_(i,k/2).
RamifiedLaurentSeries flat_middle_component(const InfinitySolution& sol);

// Value of the free coefficient for which flat_middle_component has no
// constant term. This fixes the formal solution used by sfull_matrix and
// matches the finite-part convention of the regularized moments.
Rational resonant_free_coefficient(int k, int i);

// Middle index set: 1..k', without k/4 when 4 | k.
std::vector<int> middle_indices(int k);

// (-1)^(k+1) mu_(k,i,j) over the middle indices; for 4 | k and i, j > k/4 the
// entry uses nu = mu_(k,i,j) - gamma_(k,j) mu_(k,i,k/4).
ExactMatrix smid_matrix(int k);

// Full (k'+1) x (k'+1) pairing matrix, index 0 first. Resonant rows use the
// normalized solutions of resonant_free_coefficient.
ExactMatrix sfull_matrix(int k);

Rational det_smid_closed_form(int k);
// Anti-diagonal entry (i, k'+1-i) predicted for the middle matrix.
Rational smid_antidiagonal_closed_form(int k, int i);

}  // namespace bessel_lab
