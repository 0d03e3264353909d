#include <gtest/gtest.h>

#include <algorithm>

#include "bessel_lab/bessel_series.hpp"
#include "bessel_lab/combinatorics.hpp"
#include "bessel_lab/derham.hpp"
#include "bessel_lab/errors.hpp"
#include "bessel_lab/exact_matrix.hpp"

using namespace bessel_lab;

namespace {

Rational Q(const char* s) { return Rational::parse(s); }

Rational sign_pow(int e) { return e % 2 == 0 ? Rational(1) : Rational(-1); }

}  // namespace

TEST(DeRham, KFiveValues) {
  ExactMatrix want{{Rational(0), Q("8/15")}, {Q("8/15"), Q("208/3375")}};
  EXPECT_EQ(smid_matrix(5), want);
  auto sol = solve_at_infinity(5, 2, k_prime(5));
  EXPECT_EQ(sol.mu0.coefficient_at(Rational(-1)), Q("19/225"));
  EXPECT_EQ(sol.muk.coefficient_at(Rational(2)), Q("208/3375"));
  EXPECT_FALSE(sol.gamma.has_value());
}

TEST(DeRham, KSixValues) {
  ExactMatrix want{{Rational(0), Q("-5/8")}, {Q("5/8"), Rational(0)}};
  EXPECT_EQ(smid_matrix(6), want);
}

TEST(DeRham, SmallK) {
  EXPECT_EQ(smid_matrix(3), (ExactMatrix{{Q("-2/3")}}));
  EXPECT_EQ(smid_matrix(1).rows(), 0u);
  EXPECT_EQ(smid_matrix(2).rows(), 0u);
  EXPECT_EQ(smid_matrix(4).rows(), 0u);
  EXPECT_THROW(solve_at_infinity(5, 3, 2), DomainError);
}

TEST(DeRham, AntiDiagonalKSeven) {
  ExactMatrix s = smid_matrix(7);
  for (int i = 1; i <= 3; ++i) EXPECT_EQ(s(i - 1, 3 - i), Q("-16/35"));
}

TEST(DeRham, TriangularityAndSymmetry) {
  for (int k = 3; k <= 24; ++k) {
    const int kp = k_prime(k);
    for (int i = 1; i <= kp; ++i) {
      if (k > 16 || (k % 4 == 0 && i == k / 4)) continue;
      auto sol = solve_at_infinity(k, i, kp);
      for (int j = 1; i + j <= kp; ++j) EXPECT_TRUE(sol.muk.coefficient(j).is_zero()) << k << " " << i << " " << j;
    }
    ExactMatrix s = smid_matrix(k);
    auto idx = middle_indices(k);
    const Rational sym = sign_pow(k + 1);
    for (size_t a = 0; a < s.rows(); ++a) {
      for (size_t b = 0; b < s.cols(); ++b) {
        EXPECT_EQ(s(a, b), sym * s(b, a)) << k;
        if (idx[a] + idx[b] < kp + 1) EXPECT_TRUE(s(a, b).is_zero());
        if (idx[a] + idx[b] == kp + 1) EXPECT_EQ(s(a, b), smid_antidiagonal_closed_form(k, idx[a])) << k;
      }
    }
  }
}

TEST(DeRham, DeterminantClosedForms) {
  for (int k = 3; k <= 20; ++k) {
    const Rational d = det_exact(smid_matrix(k));
    EXPECT_EQ(d, det_smid_closed_form(k)) << k;
    EXPECT_EQ(det_exact(sfull_matrix(k)), k % 4 == 0 ? -d : d) << k;
  }
  EXPECT_EQ(det_exact(smid_matrix(5)), -Q("8/15").pow(2));
  EXPECT_EQ(det_exact(sfull_matrix(8)), -(pow2(-4) * Rational(105, 24)).pow(2));
}

TEST(DeRham, FullMatrixShape) {
  ExactMatrix s5 = sfull_matrix(5);
  ExactMatrix want{{Rational(1), Rational(0), Rational(0)},
                   {Rational(0), Rational(0), Q("8/15")},
                   {Rational(0), Q("8/15"), Q("208/3375")}};
  EXPECT_EQ(s5, want);
  ExactMatrix s8 = sfull_matrix(8);
  EXPECT_EQ(s8(2, 2), Rational(-1));
  EXPECT_EQ(s8(0, 2), Rational(0));
  EXPECT_EQ(s8(2, 3), -gamma_constant(8, 3));
  for (int k : {3, 5, 6, 7, 9, 10}) {
    ExactMatrix s = sfull_matrix(k);
    EXPECT_EQ(s(0, 0), Rational(1));
    for (size_t j = 1; j < s.cols(); ++j) {
      EXPECT_TRUE(s(0, j).is_zero());
      EXPECT_TRUE(s(j, 0).is_zero());
    }
  }
}

TEST(DeRham, GammaCrossCheck) {
  for (int k : {8, 12, 16, 20}) {
    for (int i = k / 4 + 1; i <= k_prime(k); ++i) {
      auto sol = solve_at_infinity(k, i, k_prime(k));
      ASSERT_TRUE(sol.gamma.has_value());
      EXPECT_EQ(*sol.gamma, gamma_constant(k, i)) << k << " " << i;
    }
    EXPECT_EQ(gamma_constant(k, k / 4 + 1), Rational(k, 64));
    EXPECT_EQ(gamma_constant(k, k / 4 + 2), Rational(k * (k + 52), 8192));
  }
}

TEST(DeRham, LeadingSymbol) {
  for (int k = 2; k <= 24; k += 2) {
    const int kp = k_prime(k);
    for (int ell = -kp; ell <= 0; ++ell) {
      EXPECT_EQ(leading_symbol(k, ell), leading_symbol_closed_form(k, ell)) << k << " " << ell;
    }
  }
}

TEST(DeRham, LowestCoefficientEvenK) {
  for (int k = 4; k <= 16; k += 2) {
    for (int i = 1; i <= k_prime(k); ++i) {
      if (k % 4 == 0 && i == k / 4) continue;
      auto sol = solve_at_infinity(k, i, k_prime(k));
      EXPECT_EQ(sol.mu0.coefficient_at(Rational(-i)), sign_pow(k_prime(k)) / leading_symbol(k, -i)) << k << " " << i;
    }
  }
}

TEST(DeRham, ResonantNormalization) {
  // The flat (e0 e1bar)^(k/2) component has no constant term.
  EXPECT_EQ(resonant_free_coefficient(8, 3), Q("2455/147456"));
  for (int k : {8, 12}) {
    for (int i = k / 4 + 1; i <= k_prime(k); ++i) {
      auto sol = solve_at_infinity(k, i, k_prime(k) + k / 4 + 3, resonant_free_coefficient(k, i));
      EXPECT_TRUE(flat_middle_component(sol).coefficient(0).is_zero()) << k << " " << i;
    }
  }
  EXPECT_THROW(resonant_free_coefficient(8, 1), DomainError);
}

TEST(DeRham, MiddleMatrixIsNormalizationIndependent) {
  // Shifting the free coefficient changes mu_k by a multiple of the k/4 row;
  // the nu entries cancel it.
  const int k = 12;
  ExactMatrix base = smid_matrix(k);
  auto idx = middle_indices(k);
  for (int i = k / 4 + 1; i <= k_prime(k); ++i) {
    auto a = solve_at_infinity(k, i, k_prime(k), Rational(0));
    auto b = solve_at_infinity(k, i, k_prime(k), Q("7/3"));
    for (int j = k / 4 + 1; j <= k_prime(k); ++j) {
      Rational nu_a = a.muk.coefficient(j) - gamma_constant(k, j) * a.muk.coefficient(k / 4);
      Rational nu_b = b.muk.coefficient(j) - gamma_constant(k, j) * b.muk.coefficient(k / 4);
      EXPECT_EQ(nu_a, nu_b);
      size_t r = std::find(idx.begin(), idx.end(), i) - idx.begin();
      size_t c = std::find(idx.begin(), idx.end(), j) - idx.begin();
      EXPECT_EQ(base(r, c), -nu_a);
    }
  }
}
