#include <gtest/gtest.h>

#include <map>
#include <random>
#include <utility>

#include <nlohmann/json.hpp>

#include "bessel_lab/combinatorics.hpp"
#include "bessel_lab/errors.hpp"
#include "bessel_lab/exact_matrix.hpp"
#include "bessel_lab/rational.hpp"

using namespace bessel_lab;

namespace {

Rational Q(const char* s) { return Rational::parse(s); }

// B_n / n! from the power series inverse of (e^x - 1)/x = sum x^n/(n+1)!.
std::vector<Rational> bernoulli_by_division(int n_max) {
  std::vector<Rational> d(n_max + 1), inv(n_max + 1);
  for (int n = 0; n <= n_max; ++n) d[n] = Rational(BigInt(1), factorial(n + 1));
  inv[0] = Rational(1);
  for (int n = 1; n <= n_max; ++n) {
    Rational s;
    for (int m = 1; m <= n; ++m) s += d[m] * inv[n - m];
    inv[n] = -s;
  }
  for (int n = 0; n <= n_max; ++n) inv[n] *= Rational(factorial(n));
  return inv;
}

// Laplace expansion along the first row.
Rational det_cofactor(const ExactMatrix& m) {
  const size_t n = m.rows();
  if (n == 0) return Rational(1);
  if (n == 1) return m(0, 0);
  Rational total;
  for (size_t j = 0; j < n; ++j) {
    if (m(0, j).is_zero()) continue;
    std::vector<size_t> rows, cols;
    for (size_t r = 1; r < n; ++r) rows.push_back(r);
    for (size_t c = 0; c < n; ++c)
      if (c != j) cols.push_back(c);
    Rational minor = det_cofactor(m.select(rows, cols));
    total += (j % 2 == 0 ? m(0, j) : -m(0, j)) * minor;
  }
  return total;
}

ExactMatrix random_matrix(std::mt19937& rng, size_t n) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 6);
  ExactMatrix m(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) m(i, j) = Rational(num(rng), den(rng));
  return m;
}

using Poly = std::map<std::pair<int, int>, Rational>;  // (deg a, deg b) -> coefficient

void add_term(Poly& p, int da, int db, const Rational& c) {
  Rational& slot = p[{da, db}];
  slot += c;
  if (slot.is_zero()) p.erase({da, db});
}

}  // namespace

TEST(Rational, ReducedWithPositiveDenominator) {
  Rational r(BigInt(6), BigInt(-4));
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), 2);
  EXPECT_EQ(Q("-3/2"), r);
  EXPECT_EQ(Q("10/5").to_string(), "2");
  EXPECT_THROW(Q("1/0"), DomainError);
  EXPECT_THROW(Q("abc"), DomainError);
  EXPECT_THROW(Rational(1) / Rational(0), DomainError);
}

TEST(Rational, JsonStringForm) {
  nlohmann::json j = Q("-7/12");
  EXPECT_EQ(j.get<std::string>(), "-7/12");
  EXPECT_EQ(j.get<Rational>(), Q("-7/12"));
  nlohmann::json i = Rational(5);
  EXPECT_EQ(i.get<std::string>(), "5");
}

TEST(Rational, PowAndOrdering) {
  EXPECT_EQ(Q("2/3").pow(3), Q("8/27"));
  EXPECT_EQ(Q("2/3").pow(-2), Q("9/4"));
  EXPECT_LT(Q("1/3"), Q("1/2"));
  EXPECT_EQ(Q("-5/7").abs(), Q("5/7"));
}

TEST(Bernoulli, SmallValues) {
  EXPECT_EQ(bernoulli(0), Rational(1));
  EXPECT_EQ(bernoulli(1), Q("-1/2"));
  EXPECT_EQ(bernoulli(2), Q("1/6"));
  EXPECT_EQ(bernoulli(4), Q("-1/30"));
  EXPECT_EQ(bernoulli(12), Q("-691/2730"));
  EXPECT_THROW(bernoulli(-1), DomainError);
}

TEST(Bernoulli, MatchesGeneratingFunctionDivision) {
  auto oracle = bernoulli_by_division(60);
  for (int n = 0; n <= 60; ++n) EXPECT_EQ(bernoulli(n), oracle[n]) << n;
}

TEST(Bernoulli, RecursionAndOddVanishing) {
  for (int m = 1; m <= 200; ++m) {
    Rational s;
    for (int r = 0; r <= m; ++r) s += Rational(binomial(m + 1, r)) * bernoulli(r);
    EXPECT_TRUE(s.is_zero()) << m;
  }
  for (int m = 1; m < 100; ++m) EXPECT_TRUE(bernoulli(2 * m + 1).is_zero());
}

TEST(Factorials, Conventions) {
  EXPECT_EQ(factorial(-3), 1);
  EXPECT_EQ(factorial(0), 1);
  EXPECT_EQ(factorial(10), 3628800);
  EXPECT_EQ(double_factorial(7), 105);
  EXPECT_EQ(double_factorial(8), 384);
  EXPECT_EQ(double_factorial(-1), 1);
  EXPECT_EQ(pow2(-3), Q("1/8"));
}

TEST(Binomial, Values) {
  EXPECT_EQ(binomial(5, 2), 10);
  EXPECT_EQ(binomial(4, 3), 4);
  EXPECT_EQ(binomial(3, 5), 0);
  EXPECT_EQ(binomial(3, -1), 0);
}

TEST(CCoeff, ValuesAndDomain) {
  EXPECT_EQ(c_coeff(1, 1), Rational(1));
  EXPECT_EQ(c_coeff(2, 1), Rational(1));
  EXPECT_EQ(c_coeff(2, 2), Q("-1/4"));
  EXPECT_THROW(c_coeff(3, 0), DomainError);
  EXPECT_THROW(c_coeff(3, 4), DomainError);
}

TEST(CCoeff, PowerSumIdentities) {
  for (int n = 1; n <= 40; ++n) {
    for (int r = 1; r <= n + 1; ++r) {
      Rational s;
      for (int a = 1; a <= n; ++a) s += c_coeff(n, a) * Rational(BigInt(a)).pow(r);
      if (r == 1) {
        EXPECT_EQ(s, Rational(1, n)) << n;
      } else if (r <= n) {
        EXPECT_TRUE(s.is_zero()) << n << " " << r;
      } else {
        Rational want(factorial(n - 1));
        EXPECT_EQ(s, n % 2 == 1 ? want : -want) << n;
      }
    }
  }
}

TEST(CCoeff, BernoulliSumLemma) {
  for (int total = 1; total <= 30; ++total) {
    for (int n = 1; n <= total; ++n) {
      const int r = total - n;
      Rational s;
      for (int a = 1; a <= total; ++a) {
        Rational inner;
        for (int b = 1; b <= a; ++b) inner += Rational(BigInt(b)).pow(n);
        s += c_coeff(total, a) * inner;
      }
      const Rational sign_n = n % 2 == 0 ? Rational(1) : Rational(-1);
      Rational want = sign_n * bernoulli(n) / Rational(total);
      if (r == 0) want -= sign_n * Rational(factorial(n - 1)) / Rational(n + 1);
      EXPECT_EQ(s, want) << "n=" << n << " r=" << r;
    }
  }
}

TEST(Theta, Values) {
  for (int m = 1; m <= 8; ++m) EXPECT_EQ(theta_coeff(m, 0), Rational(1, m));
  for (int m = 2; m <= 8; ++m) EXPECT_EQ(theta_coeff(m, 1), Q("-1/2"));
  EXPECT_EQ(theta_tilde(2), Q("-1/12"));
  EXPECT_THROW(theta_coeff(3, 3), DomainError);
}

TEST(Theta, PolynomialIdentity) {
  for (int m = 1; m <= 15; ++m) {
    Poly lhs;
    for (int r = 0; r < m; ++r) {
      const int n = m - r;
      for (int s = 1; s <= n; ++s) add_term(lhs, r + s, n - s, theta_coeff(m, r) * Rational(binomial(n, s)));
    }
    Poly rhs;
    add_term(rhs, 1, m - 1, Rational(1));
    EXPECT_EQ(lhs, rhs) << m;
  }
}

TEST(Theta, IntegratedIdentity) {
  for (int m = 1; m <= 15; ++m) {
    Rational tilde;
    for (int r = 0; r < m; ++r) tilde += theta_coeff(m, r) / Rational(m - r + 1);
    EXPECT_EQ(tilde, theta_tilde(m)) << m;

    Poly lhs;
    for (int r = 0; r < m; ++r) {
      const int n = m - r + 1;
      const Rational c = theta_coeff(m, r) / Rational(n);
      for (int s = 1; s <= n; ++s) add_term(lhs, r - 1 + s, n - s, c * Rational(binomial(n, s)));
    }
    Poly rhs;
    add_term(rhs, m, 0, theta_tilde(m));
    add_term(rhs, 0, m, Rational(1, m));
    EXPECT_EQ(lhs, rhs) << m;
  }
}

TEST(Combinatorics, BinomialParityLemma) {
  for (int k = 1; k <= 40; ++k) {
    Rational s;
    for (int a = 0; a <= k; ++a) {
      if (2 * a == k) continue;
      Rational t = Rational(binomial(k, a)) / Rational(k - 2 * a);
      s += a % 2 == 0 ? t : -t;
    }
    if (k % 2 == 0) {
      EXPECT_TRUE(s.is_zero()) << k;
    } else {
      const int kp = (k - 1) / 2;
      Rational want = pow2(k) * Rational(-2).pow(kp) * Rational(factorial(kp)) / Rational(double_factorial(k));
      EXPECT_EQ(s, want) << k;
    }
  }
}

TEST(Combinatorics, TwoChainLemma) {
  for (int n = 1; n <= 20; ++n) {
    for (int r = 0; r <= 2 * n; ++r) {
      BigInt s = 0;
      for (int i = 0; i <= n; ++i) {
        BigInt t = binomial(n, i) * binomial(2 * n - i, r);
        s += i % 2 == 0 ? t : BigInt(-t);
      }
      BigInt want = r < n ? BigInt(0) : binomial(n, r - n);
      EXPECT_EQ(s, want) << n << " " << r;
    }
  }
}

TEST(ExactMatrix, DeterminantBasics) {
  EXPECT_EQ(det_exact(ExactMatrix{{Q("7/3")}}), Q("7/3"));
  EXPECT_EQ(det_exact(exact_identity(6)), Rational(1));
  EXPECT_EQ(det_exact(ExactMatrix()), Rational(1));
  EXPECT_EQ(det_exact(ExactMatrix{{Rational(1), Rational(2)}, {Rational(2), Rational(4)}}), Rational(0));
}

TEST(ExactMatrix, DeterminantMatchesCofactorExpansion) {
  std::mt19937 rng(1234);
  for (size_t n = 1; n <= 6; ++n)
    for (int rep = 0; rep < 5; ++rep) {
      ExactMatrix m = random_matrix(rng, n);
      EXPECT_EQ(det_exact(m), det_cofactor(m));
    }
}

TEST(ExactMatrix, InverseProperties) {
  std::mt19937 rng(99);
  for (size_t n = 1; n <= 7; ++n) {
    ExactMatrix m = random_matrix(rng, n);
    if (det_exact(m).is_zero()) continue;
    ExactMatrix inv = invert_exact(m);
    EXPECT_EQ(matmul_exact(m, inv), exact_identity(n));
    EXPECT_EQ(det_exact(m) * det_exact(inv), Rational(1));
  }
}

TEST(ExactMatrix, SymbolicTwoByTwoInverse) {
  const Rational x = Q("208/3375");
  ExactMatrix m{{Rational(0), Q("8/15")}, {Q("8/15"), x}};
  const Rational f = Q("15/8");
  ExactMatrix want{{-x * f * f, f}, {f, Rational(0)}};
  EXPECT_EQ(invert_exact(m), want);
}

TEST(ExactMatrix, SingularInverseThrows) {
  ExactMatrix m{{Rational(1), Rational(2)}, {Rational(3), Rational(6)}};
  EXPECT_THROW(invert_exact(m), SingularMatrixError);
}

TEST(ExactMatrix, JsonRoundTrip) {
  ExactMatrix m{{Q("1/2"), Q("-3")}, {Q("0"), Q("22/7")}};
  nlohmann::json j = exact_matrix_to_json(m);
  EXPECT_EQ(j[0][0], "1/2");
  EXPECT_EQ(exact_matrix_from_json(j), m);
}
