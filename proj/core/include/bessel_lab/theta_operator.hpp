#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bessel_lab/rational.hpp"
#include "bessel_lab/series.hpp"

namespace bessel_lab {

// Differential operator sum c_{p,q} w^p theta^q with theta = w^2 d/dw,
// stored in normal order (powers of w to the left).
class ThetaOperator {
 public:
  using Key = std::pair<int, int>;  // (p, q)

  ThetaOperator() = default;

  static ThetaOperator constant(const Rational& c);
  static ThetaOperator theta();
  static ThetaOperator w_power(int p);
  static ThetaOperator term(int p, int q, const Rational& c);

  const std::map<Key, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(int p, int q) const;

  // Smallest p + q over the non-zero terms. Every term raises the exponent
  // of a monomial by exactly p + q.
  int min_order() const;
  int max_order() const;

  // Terms with p + q == order.
  ThetaOperator component(int order) const;

  // Coefficient lambda with component(order)(w^l) = lambda * w^(l + order).
  Rational symbol(int order, const Rational& ell) const;

  // (exponent shift p+q, coefficient) pairs of this operator applied to w^ell.
  std::vector<std::pair<int, Rational>> apply_monomial(const Rational& ell) const;

  RamifiedLaurentSeries apply(const RamifiedLaurentSeries& s) const;

  ThetaOperator& operator+=(const ThetaOperator& o);
  ThetaOperator& operator-=(const ThetaOperator& o);
  ThetaOperator& operator*=(const Rational& c);
  friend ThetaOperator operator+(ThetaOperator a, const ThetaOperator& b) { return a += b; }
  friend ThetaOperator operator-(ThetaOperator a, const ThetaOperator& b) { return a -= b; }
  friend ThetaOperator operator*(ThetaOperator a, const Rational& c) { return a *= c; }
  friend ThetaOperator operator*(const Rational& c, ThetaOperator a) { return a *= c; }
  // Composition, rewritten to normal order with theta w^p = w^p theta + p w^(p+1).
  friend ThetaOperator operator*(const ThetaOperator& a, const ThetaOperator& b);

  friend bool operator==(const ThetaOperator& a, const ThetaOperator& b) { return a.terms_ == b.terms_; }

  std::string to_string() const;

 private:
  void add(int p, int q, const Rational& c);

  std::map<Key, Rational> terms_;
};

// Rising factorial ell (ell+1) ... (ell+q-1).
Rational rising_factorial(const Rational& ell, int q);

}  // namespace bessel_lab
