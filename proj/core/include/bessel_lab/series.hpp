#pragma once

#include <map>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "bessel_lab/rational.hpp"

namespace bessel_lab {

// Truncated Laurent series in w^(1/ram), ram in {1, 2}. Coefficients are
// stored by integer index n, standing for w^(n/ram); every index below
// trunc() is known (absent means zero), nothing at or above it is.
class RamifiedLaurentSeries {
 public:
  RamifiedLaurentSeries() = default;
  RamifiedLaurentSeries(int ram, int trunc);

  static RamifiedLaurentSeries monomial(int index, const Rational& c, int ram, int trunc);

  int ram() const { return ram_; }
  int trunc() const { return trunc_; }
  const std::map<int, Rational>& terms() const { return coeffs_; }

  // Throws TruncationError for index >= trunc().
  Rational coefficient(int index) const;
  // Coefficient of w^e for a rational exponent e.
  Rational coefficient_at(const Rational& exponent) const;
  void set(int index, const Rational& c);

  // Smallest index with a non-zero coefficient, or trunc() if none is known.
  int valuation() const;

  RamifiedLaurentSeries with_ram(int ram) const;
  RamifiedLaurentSeries truncated(int trunc) const;

  RamifiedLaurentSeries& operator+=(const RamifiedLaurentSeries& o);
  RamifiedLaurentSeries& operator-=(const RamifiedLaurentSeries& o);
  RamifiedLaurentSeries& operator*=(const Rational& c);
  friend RamifiedLaurentSeries operator+(RamifiedLaurentSeries a, const RamifiedLaurentSeries& b) { return a += b; }
  friend RamifiedLaurentSeries operator-(RamifiedLaurentSeries a, const RamifiedLaurentSeries& b) { return a -= b; }
  friend RamifiedLaurentSeries operator*(RamifiedLaurentSeries a, const Rational& c) { return a *= c; }
  friend RamifiedLaurentSeries operator*(const RamifiedLaurentSeries& a, const RamifiedLaurentSeries& b);

  RamifiedLaurentSeries pow(unsigned e) const;

  // Multiplies by w^(shift/ram).
  RamifiedLaurentSeries shifted(int shift) const;

  friend bool operator==(const RamifiedLaurentSeries& a, const RamifiedLaurentSeries& b);

  std::string to_string() const;

 private:
  void prune();

  int ram_ = 1;
  int trunc_ = 0;
  std::map<int, Rational> coeffs_;
};

void to_json(nlohmann::json& j, const RamifiedLaurentSeries& s);

}  // namespace bessel_lab
